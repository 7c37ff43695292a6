"""Claim-by-claim verification suite with a deterministic JSON report."""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import classify as cl
from .families import (
    FamilyId,
    ParamPoint,
    all_family_ids,
    c_set_element,
    c_set_interval,
    c_set_rational,
    c_bar_membership,
    det_class,
    family_element,
    family_membership,
    family_point,
    grover,
    in_family,
    sporadic_opm,
    trig_family,
)
from .matrix import (
    Mat,
    conjugate_hadamard,
    constant_line_sum,
    is_orthogonal,
    is_permutative,
    orthogonality_residual,
    pattern_of,
    permutative_gap,
    row_col_sums,
    to_matrix,
)
from .patterns import is_strongly_quadrangular, sweep_order4
from .perm import Perm, all_perms, h_orthogonal, parse_cycles, s4_partition
from .span import (
    PermLinComb,
    add_perm_preserves_opm,
    basis_B,
    in_perm_span,
    opm_as_four_perms,
    split_six_permutative,
    subspace_membership,
    two_perm_orthogonality_scan,
)

EXHAUSTIVE = "exact-exhaustive"
SAMPLED = "exact-sampled"
APPROX = "approx-sampled"


@dataclass
class ReportEntry:
    claim: str
    anchor: str
    method: str
    samples: int
    passed: bool
    details: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "anchor": self.anchor,
            "method": self.method,
            "samples": self.samples,
            "result": "pass" if self.passed else "fail",
            "details": self.details,
            "counterexamples": self.counterexamples,
        }


@dataclass
class SuiteReport:
    seed: int
    samples: int
    entries: list[ReportEntry]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "passed": self.passed,
            "entries": [e.to_json() for e in self.entries],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def table(self) -> str:
        w = max(len(e.claim) for e in self.entries)
        lines = [f"{'claim'.ljust(w)}  {'method'.ljust(16)}  {'samples':>7}  result"]
        for e in self.entries:
            lines.append(f"{e.claim.ljust(w)}  {e.method.ljust(16)}  {e.samples:>7}  {'pass' if e.passed else 'FAIL'}")
        return "\n".join(lines)


def _rng(seed: int, claim: str) -> random.Random:
    return random.Random(f"{seed}:{claim}")


def random_rational(rng: random.Random, bound: int = 60) -> Fraction:
    """Nonzero rational with numerator and denominator bounded by ``bound``."""
    num = 0
    while num == 0:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, bound))


def _mjs(a: Mat) -> list:
    return [[str(v) for v in r] for r in a.rows]


# group chains ------------------------------------------------------------------------

CHAIN_LETTER = {1: "X", 2: "Y", 3: "Z"}
CHAIN_PREFIX = {1: "(34)", 2: "(24)", 3: "(23)"}


def _klein(j: int, k: int) -> int:
    """Index combination rule of the product table; index 3 is neutral."""
    if j == k:
        return 3
    if 3 in (j, k):
        return j + k - 3
    return ({1, 2, 4} - {j, k}).pop()


def expected_product_set(a: tuple[bool, int], b: tuple[bool, int]) -> tuple[bool, int]:
    """(prefixed, index) of AB for A, B in the given (prefixed, index) sets."""
    return (a[0] == b[0], _klein(a[1], b[1]))


def chain_claimed_pairs() -> list[tuple[tuple[bool, int], tuple[bool, int]]]:
    """Ordered set pairs whose product membership is asserted in the proof."""
    pairs = set()
    for j in range(1, 5):
        group = [(True, 3), (True, j), (False, 3), (False, j)]
        pairs.update(itertools.product(group, group))
    for j, k in itertools.product(range(1, 5), repeat=2):
        pairs.add(((True, j), (False, k)))
        pairs.add(((False, k), (True, j)))
    return sorted(pairs)


def _chain_sample(chain: int, s: tuple[bool, int], rng: random.Random) -> Mat:
    fid = FamilyId(CHAIN_LETTER[chain], s[1])
    pbar = parse_cycles(CHAIN_PREFIX[chain]) if s[0] else None
    return family_element(fid, family_point(fid, random_rational(rng), rng.choice((1, -1))), pbar)


def _set_name(chain: int, s: tuple[bool, int]) -> str:
    return (f"P{CHAIN_PREFIX[chain]}" if s[0] else "") + f"{CHAIN_LETTER[chain]}{s[1]}"


def _in_set(a: Mat, chain: int, s: tuple[bool, int]) -> bool:
    pbar = parse_cycles(CHAIN_PREFIX[chain]) if s[0] else None
    return in_family(a, FamilyId(CHAIN_LETTER[chain], s[1]), pbar) is not None


def verify_group_chain(chain: int, n_samples: int, seed: int) -> ReportEntry:
    """Products, transposes and the identity for one of the three chains, on exact samples."""
    if chain not in CHAIN_LETTER:
        raise ValueError(f"unknown chain {chain}; expected 1, 2 or 3")
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    rng = _rng(seed, f"chain{chain}")
    counter = []
    checked = 0
    ident = Mat.identity()
    identity_ok = _in_set(ident, chain, (True, 3))
    for sa, sb in chain_claimed_pairs():
        want = expected_product_set(sa, sb)
        for _ in range(n_samples):
            a, b = _chain_sample(chain, sa, rng), _chain_sample(chain, sb, rng)
            checked += 1
            if not _in_set(a @ b, chain, want) and len(counter) < 5:
                counter.append({"A_set": _set_name(chain, sa), "B_set": _set_name(chain, sb),
                                "expected": _set_name(chain, want), "A": _mjs(a), "B": _mjs(b)})
    transposes = 0
    for s in [(p, j) for p in (True, False) for j in range(1, 5)]:
        for _ in range(n_samples):
            a = _chain_sample(chain, s, rng)
            transposes += 1
            if not _in_set(a.T, chain, s) and len(counter) < 5:
                counter.append({"transpose_of": _set_name(chain, s), "A": _mjs(a)})
    letter = CHAIN_LETTER[chain]
    return ReportEntry(
        claim=f"group-chain-{letter}",
        anchor=f"chains of groups of complex orthogonal matrices built from P{CHAIN_PREFIX[chain]}{letter}3 and {letter}j",
        method=SAMPLED,
        samples=checked + transposes,
        passed=identity_ok and not counter,
        details={"set_pairs": len(chain_claimed_pairs()), "products": checked, "transposes": transposes,
                 "identity_in_base_group": identity_ok},
        counterexamples=counter,
    )


# fixed examples -----------------------------------------------------------------------

NONCLOSURE_A = [["2/5", "-2/5", "4/5", "1/5"], ["-2/5", "2/5", "1/5", "4/5"],
                ["4/5", "1/5", "-2/5", "2/5"], ["1/5", "4/5", "2/5", "-2/5"]]


def nonclosure_b() -> Mat:
    r = math.sqrt(2) / 3
    t, o = 2 / 3, 1 / 3
    return Mat.approx([[r, t, -r, o], [t, -r, o, r], [-r, o, r, t], [o, r, t, -r]], 1e-10)


def verify_nonclosure_example() -> ReportEntry:
    a = Mat.exact(NONCLOSURE_A)
    b = nonclosure_b()
    ab = a.to_approx(1e-10) @ b
    res = orthogonality_residual(ab)
    gap = permutative_gap(ab)
    a_in = in_family(a, FamilyId("X", 1)) is not None
    b_in = in_family(b, FamilyId("Y", 1)) is not None
    ok = is_permutative(a) and is_permutative(b) and a_in and b_in and res < 1e-12 and gap > 1e-3
    return ReportEntry(
        claim="opm-not-closed-under-products",
        anchor="product of an X1 member with entries in fifths and a Y1 member with sqrt(2)/3 entries is not permutative",
        method=APPROX,
        samples=1,
        passed=ok,
        details={"A_in_X1": a_in, "B_in_Y1": b_in, "AB_orthogonality_residual": float(f"{res:.3e}"),
                 "AB_row_multiset_gap": round(gap, 6)},
    )


COMMUTING = {"X": ("(34)", "(1324)"), "Y": ("(24)", "(1234)"), "Z": ("(23)", "(1342)")}


def _powers(p: Perm) -> list[Perm]:
    out = [Perm.identity()]
    for _ in range(3):
        out.append(out[-1] * p)
    return out


def verify_commutative_remark(n_samples: int = 50, seed: int = 0) -> ReportEntry:
    rng = _rng(seed, "commutative")
    counter = []
    checked = 0
    for letter, (pref, gen) in COMMUTING.items():
        powers = _powers(parse_cycles(gen))
        fid = FamilyId(letter, 3)
        samples = [Mat.identity()]
        samples += [family_element(fid, family_point(fid, random_rational(rng), rng.choice((1, -1))),
                                   parse_cycles(pref)) for _ in range(n_samples)]
        for a in samples:
            checked += 1
            comb = PermLinComb.from_map((p, a[0, p(1) - 1]) for p in powers)
            if comb.evaluate(0) != a and len(counter) < 5:
                counter.append({"family": letter, "A": _mjs(a), "issue": "not a polynomial in the generator"})
        for a, b in zip(samples, samples[1:]):
            if a @ b != b @ a and len(counter) < 5:
                counter.append({"family": letter, "A": _mjs(a), "B": _mjs(b), "issue": "do not commute"})
    return ReportEntry(
        claim="commutative-base-groups",
        anchor="P(34)X3, P(24)Y3, P(23)Z3 are commutative and polynomial in one 4-cycle",
        method=SAMPLED,
        samples=checked,
        passed=not counter,
        details={"generators": {k: v[1] for k, v in COMMUTING.items()}},
        counterexamples=counter,
    )


# individual claims ------------------------------------------------------------------------


def _entry_line_sums(seed: int, n: int) -> ReportEntry:
    rng = _rng(seed, "line-sums")
    bad = []
    for _ in range(n):
        comb = PermLinComb.from_map((p, random_rational(rng, 9)) for p in all_perms(4) if rng.random() < 0.5)
        a = comb.evaluate(0)
        rows, cols = row_col_sums(a)
        s = comb.coefficient_sum()
        if any(v != s for v in rows + cols) and len(bad) < 5:
            bad.append(comb.to_json())
    return ReportEntry("line-sums-equal-coefficient-sum",
                       "row and column sums of a combination equal the sum of its coefficients",
                       SAMPLED, n, not bad, {}, bad)


def _entry_orthogonal_line_sums(seed: int, n: int) -> ReportEntry:
    rng = _rng(seed, "orthogonal-line-sums")
    bad = []
    for a, _ in cl.sample_covered(n, rng.randrange(1 << 30)):
        s = constant_line_sum(a)
        c = conjugate_hadamard(a)
        split = all(c[0, k] == 0 and c[k, 0] == 0 for k in (1, 2, 3)) and c[0, 0] == s
        if s not in (1, -1) or not split:
            bad.append(_mjs(a))
    return ReportEntry("orthogonal-combinations-have-unit-line-sums",
                       "an orthogonal combination of permutation matrices has row and column sums +-1",
                       SAMPLED, n, not bad, {}, bad[:5])


def _entry_determinants(seed: int, n: int) -> ReportEntry:
    rng = _rng(seed, "determinants")
    bad = []
    count = 0
    for fid in all_family_ids():
        for _ in range(n):
            pt = family_point(fid, random_rational(rng), rng.choice((1, -1)))
            count += 1
            if family_element(fid, pt).det() != det_class(fid):
                bad.append({"family": str(fid), "point": pt.to_json()})
    return ReportEntry("family-determinants",
                       "members with j = 1, 2 have determinant 1 and with j = 3, 4 determinant -1",
                       SAMPLED, count, not bad, {}, bad[:5])


def _entry_trig(seed: int, n: int) -> ReportEntry:
    rng = _rng(seed, "trig")
    bad = []
    worst = 0.0
    fams = {"X1theta": FamilyId("X", 1), "Y1theta": FamilyId("Y", 1), "Z1theta": FamilyId("Z", 1)}
    for which, fid in fams.items():
        for _ in range(n):
            th = rng.uniform(-math.pi, math.pi)
            m = trig_family(th, which)
            worst = max(worst, orthogonality_residual(m))
            if not (is_orthogonal(m) and is_permutative(m) and in_family(m, fid) is not None):
                bad.append({"family": which, "theta": th})
    return ReportEntry("trigonometric-families-on-their-curves",
                       "sin/cos deformations of the Grover matrix lie in X1, Y1 and Z1",
                       APPROX, 3 * n, not bad, {"max_orthogonality_residual": float(f"{worst:.3e}")}, bad[:5])


def _entry_rational(seed: int, n: int) -> ReportEntry:
    rng = _rng(seed, "rational")
    bad = []
    count = 0
    for fid in all_family_ids():
        for _ in range(n):
            pt = family_point(fid, random_rational(rng), rng.choice((1, -1)))
            pbar = rng.choice([p for p in all_perms(4) if p(1) == 1])
            m = family_element(fid, pt, pbar)
            count += 1
            if not (m.is_exact and is_orthogonal(m) and is_permutative(m) and constant_line_sum(m) in (1, -1)):
                bad.append({"family": str(fid), "point": pt.to_json(), "pbar": str(pbar)})
    return ReportEntry("rational-points-give-exact-opms",
                       "rational conic points give exactly orthogonal permutative matrices",
                       SAMPLED, count, not bad, {}, bad[:5])


def _entry_grover() -> ReportEntry:
    g = grover()
    wits = family_membership(g)
    names = sorted(f"{w.fid}@{w.pbar}" for w in wits)
    form = opm_as_four_perms(g)
    coeffs = [str(c) for c in form.coeffs]
    ok = {"X1@(34)", "Y1@(24)", "Z1@(23)"} <= set(names) and coeffs == ["-1/2", "1/2", "1/2", "1/2"]
    return ReportEntry("grover-in-three-families",
                       "the Grover matrix lies in P(34)X1, P(24)Y1 and P(23)Z1 with coefficients -1/2, 1/2, 1/2, 1/2",
                       EXHAUSTIVE, 1, ok, {"witnesses": names, "coefficients": coeffs})


def _entry_family_completeness(seed: int, n: int) -> ReportEntry:
    rng = _rng(seed, "completeness")
    bad = []
    count = 0
    for _ in range(n):
        fid = rng.choice(all_family_ids())
        m = family_element(fid, family_point(fid, random_rational(rng), rng.choice((1, -1))))
        m = m.permute(rng.choice(all_perms(4)), rng.choice(all_perms(4)))
        count += 1
        if not family_membership(m, first_only=True):
            bad.append(_mjs(m))
    for tau in all_perms(4):
        for sign in (1, -1):
            for kind in ("plain", "half-J"):
                count += 1
                if not family_membership(sporadic_opm(tau, sign, kind), first_only=True):
                    bad.append({"tau": str(tau), "sign": sign, "kind": kind})
    return ReportEntry("every-opm-is-a-prefixed-family-member",
                       "every OPM of order 4 is P X, P Y or P Z for a prefix fixing the first row",
                       SAMPLED, count, not bad, {}, bad[:5])


def _entry_partition() -> ReportEntry:
    classes = s4_partition()
    members = [p for c in classes for p in c.members]
    disjoint_cover = sorted(members) == sorted(all_perms(4))
    pairwise = all(h_orthogonal(a, b) for c in classes for a, b in itertools.combinations(c.members, 2))
    sums_j = all(
        PermLinComb.from_map((p, Fraction(1)) for p in c.members).evaluate(0) == Mat.ones()
        for c in classes
    )
    return ReportEntry("s4-partition-into-h-orthogonal-classes",
                       "S4 splits into six classes of four pairwise H-orthogonal permutations",
                       EXHAUSTIVE, 24, disjoint_cover and pairwise and sums_j,
                       {"disjoint_cover": disjoint_cover, "pairwise_h_orthogonal": pairwise, "class_sums_all_ones": sums_j})


def _entry_six_split(seed: int, n: int) -> ReportEntry:
    rng = _rng(seed, "six-split")
    bad = []
    for _ in range(n):
        comb = PermLinComb.from_map((p, random_rational(rng, 9)) for p in all_perms(4))
        parts = split_six_permutative(comb)
        total = Mat.zeros()
        for _, m in parts:
            total = total + m
        if len(parts) > 6 or total != comb.evaluate(0) or not all(is_permutative(m) for _, m in parts):
            bad.append(comb.to_json())
    return ReportEntry("combination-splits-into-six-permutative-parts",
                       "any combination is a sum of at most six permutative parts over H-orthogonal classes",
                       SAMPLED, n, not bad, {}, bad[:3])


def _entry_add_perm(seed: int, n: int) -> ReportEntry:
    rng = _rng(seed, "add-perm")
    bad = []
    orth = 0
    for _ in range(n):
        fid = rng.choice(all_family_ids())
        b = family_element(fid, family_point(fid, random_rational(rng), rng.choice((1, -1))))
        form = opm_as_four_perms(b, family_membership(b, first_only=True)[0])
        # b = a + c P with a in the span of the same quadruple
        p = form.witness.pbar * rng.choice(form.quadruple)
        c = random_rational(rng, 9)
        a = b - to_matrix(p) * c
        res = add_perm_preserves_opm(a, c, p)
        orth += res.orthogonal
        if res.orthogonal and not res.permutative:
            bad.append(_mjs(res.matrix))
        # an unrelated shift is reported as non-orthogonal rather than failing
        q = rng.choice(all_perms(4))
        other = add_perm_preserves_opm(b, random_rational(rng, 9), q)
        if other.orthogonal and not other.permutative:
            bad.append(_mjs(other.matrix))
    return ReportEntry("adding-a-permutation-keeps-permutativity",
                       "adding c P to a combination of H-orthogonal permutations gives a permutative matrix whenever it is orthogonal",
                       SAMPLED, 2 * n, not bad, {"orthogonal_results": orth}, bad[:5])


def _entry_two_perm() -> ReportEntry:
    scan = two_perm_orthogonality_scan()
    allowed = {(1, 0), (-1, 0), (0, 1), (0, -1)}
    bad = [r.to_json() for r in scan if not set(r.solutions) <= allowed]
    overlaps = {}
    for r in scan:
        overlaps[str(r.overlap)] = overlaps.get(str(r.overlap), 0) + 1
    return ReportEntry("no-orthogonal-two-permutation-combination",
                       "no orthogonal matrix is a combination of two distinct permutation matrices with both coefficients nonzero",
                       EXHAUSTIVE, len(scan), not bad and len(scan) == 276,
                       {"pairs": len(scan), "pairs_by_common_positions": overlaps}, bad[:5])


def _entry_three_perm(sampled: bool) -> ReportEntry:
    scan = cl.three_perm_scan(samples=sampled)
    tags: dict[str, int] = {}
    for e in scan:
        for k, v in e["tags"].items():
            tags[k] = tags.get(k, 0) + v
    ok = cl.IRREDUCIBLE not in tags
    return ReportEntry("three-permutation-combinations",
                       "an orthogonal combination of three permutation matrices is +-P or permutation-equivalent to 1 + OPM3",
                       EXHAUSTIVE, sum(e["samples"] for e in scan), ok,
                       {"orbits": len(scan), "tags": dict(sorted(tags.items())),
                        "example": next((e["witnesses"][0] for e in scan if e["witnesses"]), None)})


def _entry_pattern_sweep() -> ReportEntry:
    sweep = sweep_order4()
    return ReportEntry("strong-quadrangularity-implies-quadrangularity",
                       "strongly quadrangular order-4 patterns are quadrangular",
                       EXHAUSTIVE, sweep["patterns"], sweep["violations"] == 0, sweep)


def _entry_supports(seed: int, n: int) -> ReportEntry:
    rng = _rng(seed, "supports")
    bad = []
    mats = [a for a, _ in cl.sample_covered(n, rng.randrange(1 << 30))]
    mats += [sporadic_opm(t, 1, k) for t in all_perms(4) for k in ("plain", "half-J")]
    for a in mats:
        if not is_strongly_quadrangular(pattern_of(a)):
            bad.append(pattern_of(a).to_text())
    return ReportEntry("orthogonal-supports-are-strongly-quadrangular",
                       "a pattern of order at most 4 supporting a unitary is strongly quadrangular",
                       SAMPLED, len(mats), not bad, {}, bad[:5])


def _entry_gates(seed: int, n: int) -> ReportEntry:
    rng = _rng(seed, "gates")
    bad = []
    by_membership: dict[str, dict[str, int]] = {}
    for a, mem in cl.sample_covered(n, rng.randrange(1 << 30)):
        tag = cl.classify_orthogonal(a).tag
        gate = cl.theorem_gate(mem)
        key = "".join(str(k) for k in sorted(mem))
        by_membership.setdefault(key, {})
        by_membership[key][tag] = by_membership[key].get(tag, 0) + 1
        if tag not in gate.permitted:
            bad.append({"matrix": _mjs(a), "tag": tag, "gate": gate.to_json()})
    return ReportEntry("subspace-sum-theorems",
                       "orthogonal matrices in the covered subspace sums are permutative, or in the 1+3+4 sum have a block form",
                       SAMPLED, n, not bad, {"tags_by_membership": dict(sorted(by_membership.items()))}, bad[:5])


def _entry_csets(seed: int, n: int) -> ReportEntry:
    rng = _rng(seed, "csets")
    bad = []
    count = 0
    for which in ("C1", "C2"):
        lo, hi = c_set_interval(which)
        for i in range(n):
            if i % 2:
                m = c_set_rational(which, random_rational(rng, 40))
            else:
                m = c_set_element(which, rng.uniform(float(lo), float(hi)), rng.choice((1, -1)), 1e-12)
            count += 1
            c = conjugate_hadamard(m)
            blk = c.block([1, 2, 3], [1, 2, 3])
            hit = c_bar_membership(blk)
            rows, cols = row_col_sums(blk)
            want = -1 if which == "C1" else 1
            sums_ok = all(abs(float(v) - want) <= 1e-10 for v in rows + cols)
            if hit is None or hit[0] != which or not sums_ok:
                bad.append({"set": which, "matrix": _mjs(m) if m.is_exact else [list(r) for r in m.rows]})
    return ReportEntry("c-sets-have-hadamard-block-form",
                       "H M H is +-1 plus a circulant block in C1bar (row sums -1) or C2bar (row sums 1)",
                       SAMPLED, count, not bad, {}, bad[:5])


def _entry_catalog() -> ReportEntry:
    third = Fraction(1, 3)
    opening = PermLinComb.from_map([(Perm.identity(), -third), (parse_cycles("(234)"), 2 * third),
                                    (parse_cycles("(243)"), 2 * third)]).evaluate(0)
    cases = {
        "opening-example": (opening, ("X1bar", Fraction(-1, 3), Fraction(2, 3))),
        "minus-identity": (-Mat.identity(), ("Y-1bar", Fraction(-1), Fraction(0))),
    }
    out = {}
    ok = True
    for name, (m, want) in cases.items():
        w = cl.direct_sum_catalog(m)
        got = w.blocks[-1].opm3 if w is not None else None
        out[name] = None if got is None else [got[0], str(got[1]), str(got[2])]
        ok &= got == want and w.reconstruct() == m
    perm = cl.direct_sum_catalog(to_matrix(parse_cycles("(12)")))
    out["transposition-flagged-as-permutation"] = perm is not None and perm.signed_permutation is not None
    ok &= out["transposition-flagged-as-permutation"]
    return ReportEntry("direct-sum-catalog",
                       "permutation-reducible orthogonal matrices are +1 plus X1bar/Z1bar or -1 plus Y-1bar/W-1bar",
                       EXHAUSTIVE, len(cases) + 1, bool(ok), out)


CONCLUSION_M = [[10, -2, -1, 4], [-2, 7, -2, 8], [-1, -2, 10, 4], [4, 8, 4, -5]]
CONCLUSION_COEFFS = {"(12)": "1/11", "(34)": "7/11", "(13)(24)": "-1/11", "(14)(23)": "4/11",
                     "(24)": "9/11", "(12)(34)": "-3/11", "(23)": "-6/11"}


def conclusion_matrix() -> Mat:
    return Mat.exact([[Fraction(v, 11) for v in r] for r in CONCLUSION_M])


def _entry_conclusion() -> ReportEntry:
    m = conclusion_matrix()
    comb = in_perm_span(m)
    coeffs = {str(p): str(c) for p, c in comb.terms} if comb else {}
    mem = sorted(subspace_membership(comb)) if comb else []
    tag = cl.classify_orthogonal(m).tag
    ok = is_orthogonal(m) and coeffs == CONCLUSION_COEFFS and mem == [1, 2, 5] and not is_permutative(m) \
        and tag == cl.IRREDUCIBLE
    return ReportEntry("irreducible-orthogonal-matrix-in-blocks-1-2-5",
                       "an orthogonal matrix in the 1+2+5 sum with none of the permutative or block structures",
                       EXHAUSTIVE, 1, ok, {"coefficients": coeffs, "membership": mem, "tag": tag})


# driver -----------------------------------------------------------------------------------------


def run_all(seed: int = 0, samples: int = 200) -> SuiteReport:
    """Run every check.  With ``samples == 0`` only the exhaustive entries run."""
    if samples < 0:
        raise ValueError("samples must be nonnegative")
    entries: list[ReportEntry] = []
    if samples:
        entries.append(_entry_line_sums(seed, samples))
        entries.append(_entry_orthogonal_line_sums(seed, samples))
        entries.append(_entry_determinants(seed, samples))
        entries.append(_entry_trig(seed, samples))
        entries.append(_entry_rational(seed, samples))
    entries.append(_entry_grover())
    if samples:
        entries.append(_entry_family_completeness(seed, samples))
        for chain in (1, 2, 3):
            entries.append(verify_group_chain(chain, samples, seed))
        entries.append(verify_commutative_remark(samples, seed))
    entries.append(verify_nonclosure_example())
    entries.append(_entry_partition())
    if samples:
        entries.append(_entry_six_split(seed, samples))
        entries.append(_entry_add_perm(seed, samples))
    entries.append(_entry_two_perm())
    entries.append(_entry_three_perm(sampled=samples > 0))
    entries.append(_entry_pattern_sweep())
    if samples:
        entries.append(_entry_supports(seed, samples))
        entries.append(_entry_gates(seed, samples))
        entries.append(_entry_csets(seed, samples))
    entries.append(_entry_catalog())
    entries.append(_entry_conclusion())
    return SuiteReport(seed, samples, entries)
