"""Parametric families of 4x4 orthogonal permutative matrices (OPMs).

Every OPM of order 4 is, up to a row permutation fixing the first row, a member of
one of twelve conic families ``X1..X4, Y1..Y4, Z1..Z4``.  Each family is a 2x2
block matrix built from

    A_t  = [[t, -t], [-t, t]]
    B±_t = [[t, ±1 - t], [±1 - t, t]]
    F    = [[0, 1], [1, 0]]

as ``M±(x, z) = [[A_x, B±_z], [B±_z, -A_x]]`` (j = 1, 2) or
``N±(x, z) = [[B±_x, A_z], [A_z, F B±_x]]`` (j = 3, 4), conjugated by
P_(23) for the Y families and by P_(24) for the Z families.

Coordinates are stored as ``(x, z)`` throughout, also for Y/Z where the second
coordinate is usually written y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .matrix import (
    DEFAULT_TOL,
    BackendMismatch,
    Mat,
    _is_exact_scalar,
    is_orthogonal,
    is_permutative,
    to_matrix,
)
from .perm import Perm, fixing_one, parse_cycles

LETTERS = ("X", "Y", "Z")
KINDS = {1: "M+", 2: "M-", 3: "N+", 4: "N-"}
_CONJ = {"X": "id", "Y": "(23)", "Z": "(24)"}


class ConstraintError(ValueError):
    """Parameters off the family's conic."""

    def __init__(self, msg: str, residual):
        super().__init__(msg)
        self.residual = residual


@dataclass(frozen=True, order=True)
class FamilyId:
    letter: str
    j: int

    def __post_init__(self):
        if self.letter not in LETTERS or self.j not in KINDS:
            raise ValueError(f"unknown family {self.letter}{self.j}")

    @classmethod
    def parse(cls, name: str) -> FamilyId:
        name = name.strip()
        if len(name) != 2 or not name[1].isdigit():
            raise ValueError(f"unknown family {name!r}")
        return cls(name[0].upper(), int(name[1]))

    @property
    def kind(self) -> str:
        return KINDS[self.j]

    @property
    def conjugator(self) -> Perm:
        return parse_cycles(_CONJ[self.letter])

    def __str__(self) -> str:
        return f"{self.letter}{self.j}"


def all_family_ids() -> list[FamilyId]:
    return [FamilyId(l, j) for l in LETTERS for j in KINDS]


@dataclass(frozen=True)
class ParamPoint:
    x: object
    z: object

    @property
    def is_exact(self) -> bool:
        return _is_exact_scalar(self.x) and _is_exact_scalar(self.z)

    def to_json(self) -> list:
        if self.is_exact:
            return [str(Fraction(self.x)), str(Fraction(self.z))]
        return [float(self.x), float(self.z)]


def constraint_residual(j: int, x, z):
    """Left-hand side of the conic for family index j (zero on the family)."""
    if j == 1:
        return x * x + z * z - z
    if j == 2:
        return x * x + z * z + z
    if j == 3:
        return x * x + z * z - x
    if j == 4:
        return x * x + z * z + x
    raise ValueError(f"family index {j} not in 1..4")


def det_class(fid: FamilyId) -> int:
    """Determinant shared by every member of the family."""
    return 1 if fid.j in (1, 2) else -1


def _coerce_pair(x, z, tol):
    ex, ez = _is_exact_scalar(x), _is_exact_scalar(z)
    if ex and ez and not tol:
        return Fraction(x), Fraction(z), 0.0
    if (ex and not isinstance(x, int) and isinstance(z, float)) or (
        ez and not isinstance(z, int) and isinstance(x, float)
    ):
        raise BackendMismatch("mixed exact and float parameters")
    return float(x), float(z), tol or DEFAULT_TOL


def _blocks(a, b, c, d) -> list[list]:
    return [a[0] + b[0], a[1] + b[1], c[0] + d[0], c[1] + d[1]]


def mn_matrix(kind: str, x, z, tol: float | None = None) -> Mat:
    """Assemble M+, M-, N+ or N- at (x, z); the conic is not checked here."""
    x, z, tol = _coerce_pair(x, z, tol)
    one = Fraction(1) if tol == 0 else 1.0
    sgn = {"+": one, "-": -one}[kind[1]]

    def a_(t):
        return [[t, -t], [-t, t]]

    def b_(t):
        return [[t, sgn - t], [sgn - t, t]]

    def neg(m):
        return [[-v for v in r] for r in m]

    def flip(m):
        return [m[1], m[0]]

    if kind[0] == "M":
        rows = _blocks(a_(x), b_(z), b_(z), neg(a_(x)))
    elif kind[0] == "N":
        rows = _blocks(b_(x), a_(z), a_(z), flip(b_(x)))
    else:
        raise ValueError(f"unknown block form {kind!r}")
    return Mat(tuple(tuple(r) for r in rows), tol)


def check_point(fid: FamilyId, p: ParamPoint, tol: float | None = None):
    """Raise ConstraintError when p is off the family's conic; return the residual."""
    x, z, tol = _coerce_pair(p.x, p.z, tol)
    res = constraint_residual(fid.j, x, z)
    if (tol == 0 and res != 0) or (tol and abs(res) > tol):
        raise ConstraintError(f"({p.x}, {p.z}) is off the conic of {fid}: residual {res}", res)
    return res


def family_element(fid: FamilyId, p: ParamPoint, pbar: Perm | None = None, tol: float | None = None) -> Mat:
    """``P_pbar C M C`` where C conjugates into the X, Y or Z layout."""
    if pbar is None:
        pbar = Perm.identity()
    if pbar(1) != 1:
        raise ValueError(f"prefix {pbar} must fix 1")
    check_point(fid, p, tol)
    m = mn_matrix(fid.kind, p.x, p.z, tol)
    c = fid.conjugator
    m = m.permute(c, c)
    return m.permute(left=pbar)


def grover() -> Mat:
    """Order-4 Grover diffusion: diagonal -1/2, off-diagonal 1/2."""
    h = Fraction(1, 2)
    return Mat(tuple(tuple(-h if i == j else h for j in range(4)) for i in range(4)))


# parametrizations -------------------------------------------------------------


def trig_point(theta: float, r: int) -> ParamPoint:
    """Point on x^2 + z^2 + r z = 0 (r = +-1) at angle theta."""
    if r not in (1, -1):
        raise ValueError("r must be +1 or -1")
    return ParamPoint(0.5 * math.sin(theta), -0.5 * r * (1 - r * math.cos(theta)))


def trig_family(theta: float, which: str, tol: float = DEFAULT_TOL) -> Mat:
    """Closed-form Grover deformations ``X1theta``, ``Y1theta`` or ``Z1theta``."""
    s = 0.5 * math.sin(theta)
    p = 0.5 * (1 + math.cos(theta))
    m = 0.5 * (1 - math.cos(theta))
    rows = {
        "X1theta": [[s, -s, p, m], [-s, s, m, p], [p, m, -s, s], [m, p, s, -s]],
        "Y1theta": [[s, p, -s, m], [p, -s, m, s], [-s, m, s, p], [m, s, p, -s]],
        "Z1theta": [[s, p, m, -s], [p, -s, s, m], [m, s, -s, p], [-s, m, p, s]],
    }
    if which not in rows:
        raise ValueError(f"unknown trigonometric family {which!r}")
    return Mat.approx(rows[which], tol)


def rational_point(r, s: int = 1, branch: int = 1) -> ParamPoint:
    """Rational point on x^2 + z^2 - s z = 0 from a nonzero rational r.

    x = (r^2 - 1) / (2 (r^2 + 1)),  z = s/2 + branch * r / (r^2 + 1).
    """
    r = Fraction(r)
    if r == 0:
        raise ValueError("r must be nonzero")
    if s not in (1, -1) or branch not in (1, -1):
        raise ValueError("s and branch are +1 or -1")
    d = r * r + 1
    return ParamPoint((r * r - 1) / (2 * d), Fraction(s, 2) + branch * r / d)


def family_point(fid: FamilyId, r, branch: int = 1) -> ParamPoint:
    """Rational point on the conic of any family (coordinates swapped for j = 3, 4)."""
    s = 1 if fid.j in (1, 3) else -1
    p = rational_point(r, s, branch)
    if fid.j in (3, 4):
        return ParamPoint(p.z, p.x)
    return p


def sporadic_opm(tau: Perm, sign: int = 1, kind: str = "plain") -> Mat:
    """``sign * P_tau`` or ``sign * (J/2 - P_tau)``."""
    if sign not in (1, -1):
        raise ValueError("sign is +1 or -1")
    pt = to_matrix(tau)
    if kind == "plain":
        m = pt
    elif kind == "half-J":
        m = Mat.ones(4) * Fraction(1, 2) - pt
    else:
        raise ValueError(f"unknown sporadic kind {kind!r}")
    m = m * sign
    assert is_orthogonal(m) and is_permutative(m)
    return m


# sets from the L1 + L3 + L4 analysis ---------------------------------------------


def c_set_interval(which: str) -> tuple[Fraction, Fraction]:
    if which == "C1":
        return Fraction(-1), Fraction(1, 3)
    if which == "C2":
        return Fraction(-1, 3), Fraction(1)
    raise ValueError(f"unknown set {which!r}")


def c_set_discriminant(which: str, c2):
    if which == "C1":
        return (1 - 3 * c2) * (1 + c2)
    if which == "C2":
        return (1 + 3 * c2) * (1 - c2)
    raise ValueError(f"unknown set {which!r}")


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def c_set_a4(which: str, c2, branch: int = 1):
    """a4 = -c2/2 + branch * sqrt(disc)/2; exact when the discriminant is a rational square."""
    lo, hi = c_set_interval(which)
    if not lo <= c2 <= hi:
        raise ValueError(f"c2 = {c2} outside [{lo}, {hi}] for {which}")
    disc = c_set_discriminant(which, c2)
    if _is_exact_scalar(c2):
        root = _rational_sqrt(Fraction(disc))
        if root is not None:
            return -Fraction(c2) / 2 + branch * root / 2
    return -float(c2) / 2 + branch * math.sqrt(max(float(disc), 0.0)) / 2


def c_set_element(which: str, c2, branch: int = 1, tol: float = DEFAULT_TOL) -> Mat:
    """Member of C1 (first row -1/2, 1/2, 1/2, 1/2) or C2 (first row 1/2, -1/2, -1/2, -1/2)."""
    a4 = c_set_a4(which, c2, branch)
    if isinstance(a4, float):
        c2 = float(c2)
        h = 0.5
    else:
        c2 = Fraction(c2)
        h = Fraction(1, 2)
    e = h if which == "C1" else -h
    d = -a4 - c2
    rows = [
        [-e, e, e, e],
        [e, d, e + c2, a4],
        [e, a4, d, e + c2],
        [e, e + c2, a4, d],
    ]
    return Mat.approx(rows, tol) if isinstance(a4, float) else Mat.exact(rows)


def c_set_rational(which: str, t) -> Mat:
    """Exact member of C1/C2 from a rational slope t on the discriminant conic.

    The conic u^2 = disc(c2) passes through (c2, u) = (0, 1); the line u = 1 + t c2
    meets it again at a rational c2.  Then a4 = (u - c2) / 2.
    """
    t = Fraction(t)
    if which == "C1":
        c2 = -2 * (t + 1) / (t * t + 3)
    elif which == "C2":
        c2 = 2 * (1 - t) / (t * t + 3)
    else:
        raise ValueError(f"unknown set {which!r}")
    u = 1 + t * c2
    a4 = (u - c2) / 2
    branch = 1 if a4 == c_set_a4(which, c2, 1) else -1
    m = c_set_element(which, c2, branch)
    assert m.is_exact
    return m


def c_bar_block(which: str, c2, a4, tol: float = DEFAULT_TOL) -> Mat:
    """The 3x3 circulant with row sums -1 (C1bar) or +1 (C2bar)."""
    exact = _is_exact_scalar(c2) and _is_exact_scalar(a4)
    e = Fraction(1, 2) if exact else 0.5
    if which == "C1":
        e = -e
    first = [e - a4 - c2, e + a4, c2]
    rows = [first, [first[2], first[0], first[1]], [first[1], first[2], first[0]]]
    return Mat.exact(rows) if exact else Mat.approx(rows, tol)


def c_bar_membership(block: Mat) -> tuple[str, object, object] | None:
    """Recover (which, a4, c2) when a 3x3 block lies in C1bar or C2bar."""
    if block.n != 3:
        return None
    for which in ("C1", "C2"):
        e = Fraction(-1, 2) if which == "C1" else Fraction(1, 2)
        if not block.is_exact:
            e = float(e)
        c2 = block[0, 2]
        a4 = block[0, 1] - e
        cand_rows = [[e - a4 - c2, e + a4, c2]]
        cand_rows += [[cand_rows[0][2], cand_rows[0][0], cand_rows[0][1]],
                      [cand_rows[0][1], cand_rows[0][2], cand_rows[0][0]]]
        cand = Mat(tuple(tuple(r) for r in cand_rows), block.tol)
        if not cand.close(block):
            continue
        lo, hi = c_set_interval(which)
        if block.is_exact:
            if not lo <= c2 <= hi:
                continue
            if (2 * a4 + c2) ** 2 != c_set_discriminant(which, c2):
                continue
        else:
            if not float(lo) - block.tol <= c2 <= float(hi) + block.tol:
                continue
            if abs((2 * a4 + c2) ** 2 - c_set_discriminant(which, c2)) > 10 * block.tol:
                continue
        return which, a4, c2
    return None


# order-3 OPMs ---------------------------------------------------------------------

OPM3_SETS = ("X1bar", "Z1bar", "Y-1bar", "W-1bar")


def opm3_residual(which: str, x, y):
    if which in ("X1bar", "Z1bar"):
        return x * x + y * y - x - y + x * y
    if which in ("Y-1bar", "W-1bar"):
        return x * x + y * y + x + y + x * y
    raise ValueError(f"unknown order-3 set {which!r}")


def opm3_element(which: str, x, y, tol: float | None = None) -> Mat:
    """Circulant 3x3 OPM with row sum +1 (X1bar) or -1 (Y-1bar); Z1bar/W-1bar swap rows 2, 3."""
    x, y, tol = _coerce_pair(x, y, tol)
    res = opm3_residual(which, x, y)
    if (tol == 0 and res != 0) or (tol and abs(res) > tol):
        raise ConstraintError(f"({x}, {y}) is off the conic of {which}: residual {res}", res)
    s = (Fraction(1) if tol == 0 else 1.0) * (1 if which in ("X1bar", "Z1bar") else -1)
    t = s - x - y
    rows = [[x, y, t], [t, x, y], [y, t, x]]
    if which in ("Z1bar", "W-1bar"):
        rows = [rows[0], rows[2], rows[1]]
    return Mat(tuple(tuple(r) for r in rows), tol)


def opm3_membership(block: Mat) -> tuple[str, object, object] | None:
    """(which, x, y) with ``opm3_element(which, x, y) == block``, trying sets in a fixed order."""
    if block.n != 3:
        return None
    for which in OPM3_SETS:
        x, y = block[0, 0], block[0, 1]
        try:
            cand = opm3_element(which, x, y, block.tol or None)
        except ConstraintError:
            continue
        if cand.close(block):
            return which, x, y
    return None


# membership of an arbitrary matrix ------------------------------------------------


@dataclass(frozen=True)
class FamilyWitness:
    fid: FamilyId
    point: ParamPoint
    pbar: Perm

    def reconstruct(self, tol: float | None = None) -> Mat:
        return family_element(self.fid, self.point, self.pbar, tol)

    def to_json(self) -> dict:
        return {"family": str(self.fid), "point": self.point.to_json(), "pbar": str(self.pbar)}


@lru_cache(maxsize=None)
def _prefixes() -> tuple[Perm, ...]:
    return fixing_one(4)


def family_membership(a: Mat, first_only: bool = False) -> list[FamilyWitness]:
    """Every (family, point, prefix) reproducing ``a``, searching the 6 prefixes x 12 families."""
    out = []
    if a.n != 4:
        return out
    for pbar in _prefixes():
        b = a.permute(left=pbar.inverse())
        for fid in all_family_ids():
            c = fid.conjugator
            core = b.permute(c, c)
            x, z = core[0, 0], core[0, 2]
            if not a.is_zero(constraint_residual(fid.j, x, z)):
                continue
            cand = mn_matrix(fid.kind, x, z, a.tol or None)
            if cand.close(core):
                out.append(FamilyWitness(fid, ParamPoint(x, z), pbar))
                if first_only:
                    return out
    return out


def in_family(a: Mat, fid: FamilyId, pbar: Perm | None = None) -> ParamPoint | None:
    """The point with ``a == P_pbar (family element)``, or None.  ``pbar`` may be any permutation."""
    b = a if pbar is None else a.permute(left=pbar.inverse())
    c = fid.conjugator
    core = b.permute(c, c)
    x, z = core[0, 0], core[0, 2]
    if not a.is_zero(constraint_residual(fid.j, x, z)):
        return None
    if mn_matrix(fid.kind, x, z, a.tol or None).close(core):
        return ParamPoint(x, z)
    return None
