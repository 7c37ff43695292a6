"""Command line interface: ``opm4 {gen,check,decompose,classify,partition,verify,sweep}``.

Exit codes: 0 success, 1 verification failure, 2 usage/parse/constraint error,
3 input is not orthogonal (classify).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
from fractions import Fraction

from .classify import classify_orthogonal, NOT_ORTHOGONAL
from .families import (
    ConstraintError,
    FamilyId,
    ParamPoint,
    c_set_element,
    family_element,
    family_point,
    grover,
    sporadic_opm,
    trig_family,
)
from .matrix import (
    DEFAULT_TOL,
    Mat,
    Pattern,
    constant_line_sum,
    pattern_of,
    is_orthogonal,
    is_permutative,
    mat_from_json,
    mat_to_json,
    orthogonality_residual,
    snap,
)
from .patterns import is_quadrangular, is_strongly_quadrangular
from .perm import parse_cycles, s4_partition
from .span import four_perm_witnesses, in_perm_span, split_six_permutative, subspace_membership
from .verify import run_all

TRIG = ("X1theta", "Y1theta", "Z1theta")


class UsageError(Exception):
    """Bad arguments detected after parsing; reported with exit status 2."""


# parsing helpers ---------------------------------------------------------------


def parse_scalar(text: str, no_snap: bool):
    """``p/q`` or an integer gives a Fraction; a decimal is snapped unless ``no_snap``."""
    t = text.strip()
    if re.fullmatch(r"[+-]?\d+(/\d+)?", t):
        try:
            return Fraction(t)
        except ZeroDivisionError as e:
            raise UsageError(f"zero denominator in {text!r}") from e
    try:
        v = float(t)
    except ValueError as e:
        raise UsageError(f"cannot parse scalar {text!r}") from e
    if not math.isfinite(v):
        raise UsageError(f"non-finite scalar {text!r}")
    return v if no_snap else snap(v)


_ANGLE_RE = re.compile(r"^([+-]?)(\d*\.?\d*)\*?(pi)?(?:/(\d+(?:\.\d*)?))?$")


def parse_angle(text: str) -> float:
    """Angles such as ``-pi``, ``pi/4``, ``3pi/2``, ``0.5``."""
    t = text.strip().replace(" ", "").lower()
    m = _ANGLE_RE.match(t)
    if not m or (not m.group(2) and not m.group(3)):
        raise UsageError(f"cannot parse angle {text!r}")
    sign, num, pi, den = m.groups()
    v = float(num) if num else 1.0
    if pi:
        v *= math.pi
    if den:
        v /= float(den)
    return -v if sign == "-" else v


def read_matrix(path: str, tol: float, no_snap: bool) -> Mat:
    """Matrix JSON (a list of rows, or an object with a ``matrix`` key) from a path or ``-``."""
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        obj = json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read matrix from {path}: {e}") from e
    if isinstance(obj, dict):
        obj = obj.get("matrix")
    try:
        a = mat_from_json(obj, tol)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise UsageError(f"bad matrix JSON: {e}") from e
    if a.n != 4:
        raise UsageError("only 4x4 matrices are supported")
    if not a.is_exact and not no_snap:
        exact = a.to_exact()
        # keep the snapped matrix only when it is exactly what the decimals meant
        if exact.close(a, tol) and is_orthogonal(exact) == is_orthogonal(a):
            return exact
    return a


def _dumps(obj) -> str:
    if isinstance(obj, list) and obj and all(isinstance(r, list) for r in obj):
        # matrices: one row per line
        return "[\n" + ",\n".join("  " + json.dumps(r) for r in obj) + "\n]"
    return json.dumps(obj, indent=2, sort_keys=True)


def write_json(obj, out: str | None):
    text = _dumps(obj)
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _scalar_json(v):
    return str(v) if isinstance(v, Fraction) else v


# commands ------------------------------------------------------------------------------


def build_family(args) -> Mat:
    name = args.family
    if name == "grover":
        return grover()
    if name == "sporadic":
        try:
            tau = parse_cycles(args.tau or "id")
            return sporadic_opm(tau, args.sign, args.kind)
        except ValueError as e:
            raise UsageError(str(e)) from e
    if name in TRIG:
        if args.theta is None:
            raise UsageError(f"{name} needs --theta")
        return trig_family(parse_angle(args.theta), name, args.tol)
    if name in ("C1", "C2"):
        if args.c2 is None:
            raise UsageError(f"{name} needs --c2")
        c2 = parse_scalar(args.c2, args.no_snap)
        try:
            return c_set_element(name, c2, args.branch, args.tol)
        except ValueError as e:
            raise UsageError(str(e)) from e
    try:
        fid = FamilyId.parse(name)
        pbar = parse_cycles(args.pbar) if args.pbar else None
    except ValueError as e:
        raise UsageError(str(e)) from e
    if pbar is not None and pbar(1) != 1:
        raise UsageError(f"--pbar {args.pbar} must fix 1")
    if args.r is not None:
        r = parse_scalar(args.r, False)
        if r == 0:
            raise UsageError("--r must be nonzero")
        pt = family_point(fid, r, args.branch)
    else:
        if args.x is None or args.z is None:
            raise UsageError(f"{name} needs --x and --z, or --r")
        pt = ParamPoint(parse_scalar(args.x, args.no_snap), parse_scalar(args.z, args.no_snap))
    return family_element(fid, pt, pbar, None if pt.is_exact else args.tol)


def cmd_gen(args) -> int:
    try:
        m = build_family(args)
    except ConstraintError as e:
        print(f"constraint violated: residual {e.residual}", file=sys.stderr)
        return 2
    write_json(mat_to_json(m), args.out)
    return 0


def check_report(a: Mat) -> dict:
    rep = {
        "exact": a.is_exact,
        "orthogonal": is_orthogonal(a),
        "orthogonality_residual": orthogonality_residual(a),
        "permutative": is_permutative(a),
        "line_sum": _scalar_json(constant_line_sum(a)),
        "det": _scalar_json(a.det()),
    }
    pat = pattern_of(a)
    rep["pattern"] = pat.to_text()
    rep["quadrangular"] = is_quadrangular(pat)
    rep["strongly_quadrangular"] = is_strongly_quadrangular(pat)
    return rep


def cmd_check(args) -> int:
    if args.pattern:
        try:
            pat = Pattern.from_text(args.pattern)
        except ValueError as e:
            raise UsageError(str(e)) from e
        if not pat.is_square:
            raise UsageError("pattern must be square")
        write_json({"pattern": pat.to_text(), "quadrangular": is_quadrangular(pat),
                    "strongly_quadrangular": is_strongly_quadrangular(pat)}, args.out)
        return 0
    if not args.input:
        raise UsageError("check needs a matrix file or --pattern")
    write_json(check_report(read_matrix(args.input, args.tol, args.no_snap)), args.out)
    return 0


def cmd_decompose(args) -> int:
    a = read_matrix(args.input, args.tol, args.no_snap)
    comb = in_perm_span(a, snap=not args.no_snap)
    out: dict = {"in_span": comb is not None}
    if comb is not None:
        out["combination"] = comb.to_json()
        out["membership"] = sorted(subspace_membership(comb))
        out["permutative_parts"] = [
            {"class": c.index, "members": [str(p) for p in c.members], "matrix": mat_to_json(m)}
            for c, m in split_six_permutative(comb)
        ]
    if is_orthogonal(a) and is_permutative(a):
        out["four_permutation_forms"] = [f.to_json() for f in four_perm_witnesses(a)]
    write_json(out, args.out)
    return 0


def cmd_classify(args) -> int:
    a = read_matrix(args.input, args.tol, args.no_snap)
    result = classify_orthogonal(a, snap=not args.no_snap)
    write_json(result.to_json(), args.out)
    return 3 if result.tag == NOT_ORTHOGONAL else 0


def cmd_partition(args) -> int:
    write_json([c.to_json() for c in s4_partition()], args.out)
    return 0


def cmd_verify(args) -> int:
    if args.samples < 0:
        raise UsageError("--samples must be nonnegative")
    report = run_all(args.seed, args.samples)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.dumps() + "\n")
    print(report.table())
    return 0 if report.passed else 1


def sweep_rows(args) -> list[tuple[str, Mat]]:
    name = args.family
    if name in TRIG:
        start, stop = parse_angle(args.theta_start), parse_angle(args.theta_stop)
        step = parse_angle(args.step)
        if step <= 0 or stop < start:
            raise UsageError("theta range needs start <= stop and step > 0")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [(repr(start + k * step), trig_family(start + k * step, name, args.tol)) for k in range(count)]
    if args.r is None:
        raise UsageError("sweep needs --r for a conic family")
    items = [v for v in args.r.split(",") if v.strip()]
    if not items:
        raise UsageError("empty --r list")
    try:
        fid = FamilyId.parse(name)
    except ValueError as e:
        raise UsageError(str(e)) from e
    rows = []
    for v in items:
        r = parse_scalar(v, False)
        if r == 0:
            raise UsageError("r values must be nonzero")
        rows.append((str(r), family_element(fid, family_point(fid, r, args.branch))))
    return rows


def cmd_sweep(args) -> int:
    rows = sweep_rows(args)
    header = ["parameter"] + [f"a{i}{j}" for i in range(1, 5) for j in range(1, 5)] + [
        "det", "orthogonality_residual", "permutative"]
    fh = open(args.out, "w", newline="", encoding="utf-8") if args.out and args.out != "-" else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for param, m in rows:
            cells = [str(v) if m.is_exact else repr(float(v)) for v in m.entries()]
            det = m.det()
            w.writerow([param] + cells + [str(det) if m.is_exact else repr(float(det)),
                                          repr(orthogonality_residual(m)), int(is_permutative(m))])
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


# parser ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="absolute tolerance for float input")
    common.add_argument("--no-snap", action="store_true", help="keep decimals as floats instead of snapping")

    p = argparse.ArgumentParser(prog="opm4", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="emit a family member as matrix JSON")
    g.add_argument("family", help="grover, sporadic, X1..Z4, X1theta/Y1theta/Z1theta, C1 or C2")
    g.add_argument("--x")
    g.add_argument("--z", help="second coordinate (called y for Y and Z in some texts)")
    g.add_argument("--r", help="rational parameter of the conic point")
    g.add_argument("--branch", type=int, choices=(1, -1), default=1)
    g.add_argument("--theta", help="angle for the trigonometric families, e.g. pi/3")
    g.add_argument("--c2", help="parameter of the C1/C2 sets")
    g.add_argument("--tau", help="permutation of a sporadic matrix, cycle notation")
    g.add_argument("--sign", type=int, choices=(1, -1), default=1)
    g.add_argument("--kind", choices=("plain", "half-J"), default="half-J")
    g.add_argument("--pbar", help="row prefix permutation fixing 1, cycle notation")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", parents=[common], help="orthogonality, permutativity and pattern report")
    c.add_argument("input", nargs="?", help="matrix JSON path or -")
    c.add_argument("--pattern", help="pattern text such as 1100,1011,0011,1110")
    c.add_argument("--out")
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("decompose", parents=[common], help="coordinates in the permutation basis")
    d.add_argument("input")
    d.add_argument("--out")
    d.set_defaults(func=cmd_decompose)

    k = sub.add_parser("classify", parents=[common], help="structural classification")
    k.add_argument("input")
    k.add_argument("--out")
    k.set_defaults(func=cmd_classify)

    pt = sub.add_parser("partition", parents=[common], help="the six H-orthogonal classes of S4")
    pt.add_argument("--out")
    pt.set_defaults(func=cmd_partition)

    v = sub.add_parser("verify", parents=[common], help="run the verification suite")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--json", help="write the JSON report here")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", parents=[common], help="CSV table over a parameter sweep")
    s.add_argument("family")
    s.add_argument("--theta-start", default="-pi", help="write negative angles as --theta-start=-pi")
    s.add_argument("--theta-stop", default="pi")
    s.add_argument("--step", default="pi/4")
    s.add_argument("--r", help="comma separated rational parameters")
    s.add_argument("--branch", type=int, choices=(1, -1), default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
