"""The span of the 4x4 permutation matrices and decompositions inside it.

The span has dimension 10.  A fixed basis of ten permutation matrices is split
into five blocks; the block subspaces form a direct sum equal to the whole span,
so the blocks carrying nonzero coordinates identify the smallest such sum
containing a matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .families import FamilyWitness, family_membership
from .linalg import left_inverse, solve
from .matrix import (
    DEFAULT_TOL,
    Mat,
    _is_exact_scalar,
    is_orthogonal,
    is_permutative,
    to_fraction,
    to_matrix,
)
from .perm import Perm, PermClass, all_perms, class_of, compose, h_orthogonal, parse_cycles, s4_partition

# basis order used for coordinates everywhere
BASIS_CYCLES = ("(12)", "(23)", "(24)", "(34)", "(123)", "(124)", "(234)", "(12)(34)", "(13)(24)", "(14)(23)")
BLOCK_CYCLES = {
    1: ("(12)", "(34)", "(13)(24)", "(14)(23)"),
    2: ("(24)", "(12)(34)"),
    3: ("(124)", "(234)"),
    4: ("(123)",),
    5: ("(23)",),
}

# quadruples of pairwise H-orthogonal permutations, listed by the image of 1
QUADRUPLES = {
    "X": ("(34)", "(12)", "(13)(24)", "(14)(23)"),
    "Y": ("(24)", "(12)(34)", "(13)", "(14)(23)"),
    "Z": ("(23)", "(12)(34)", "(13)(24)", "(14)"),
}


class NotInSpan(ValueError):
    pass


@lru_cache(maxsize=None)
def basis_B() -> tuple[Perm, ...]:
    return tuple(parse_cycles(c) for c in BASIS_CYCLES)


@lru_cache(maxsize=None)
def basis_blocks() -> dict[int, tuple[Perm, ...]]:
    return {k: tuple(parse_cycles(c) for c in v) for k, v in BLOCK_CYCLES.items()}


def block_of(p: Perm) -> int:
    for k, members in basis_blocks().items():
        if p in members:
            return k
    raise ValueError(f"{p} is not a basis permutation")


def _vec(p: Perm) -> list[int]:
    m = to_matrix(p)
    return [int(v) for v in m.entries()]


@lru_cache(maxsize=None)
def _basis_left_inverse() -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(r) for r in left_inverse([_vec(p) for p in basis_B()]))


# linear combinations ------------------------------------------------------------


@dataclass(frozen=True)
class PermLinComb:
    """A finite combination ``sum c_p P_p``; zero coefficients are never stored."""

    terms: tuple[tuple[Perm, object], ...] = field(default_factory=tuple)

    def __post_init__(self):
        seen = set()
        for p, c in self.terms:
            if p in seen:
                raise ValueError(f"{p} appears twice")
            seen.add(p)
            if c == 0:
                raise ValueError("zero coefficients are not stored")

    @classmethod
    def from_map(cls, coeffs: Mapping[Perm, object] | Iterable[tuple[Perm, object]]) -> PermLinComb:
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[Perm, object] = {}
        for p, c in items:
            acc[p] = acc.get(p, 0) + c
        return cls(tuple(sorted(((p, c) for p, c in acc.items() if c != 0), key=lambda t: t[0])))

    def as_dict(self) -> dict[Perm, object]:
        return dict(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def support(self) -> tuple[Perm, ...]:
        return tuple(p for p, _ in self.terms)

    def coefficient(self, p: Perm):
        return self.as_dict().get(p, 0)

    @property
    def is_exact(self) -> bool:
        return all(_is_exact_scalar(c) for _, c in self.terms)

    def evaluate(self, tol: float | None = None) -> Mat:
        exact = self.is_exact if tol is None else tol == 0
        zero = Fraction(0) if exact else 0.0
        acc = [[zero] * 4 for _ in range(4)]
        for p, c in self.terms:
            c = Fraction(c) if exact else float(c)
            for i in range(4):
                acc[i][p.image[i] - 1] += c
        if exact:
            return Mat.exact(acc)
        return Mat.approx(acc, tol or DEFAULT_TOL)

    def coefficient_sum(self):
        return sum((c for _, c in self.terms), Fraction(0) if self.is_exact else 0.0)

    def left_multiply(self, q: Perm) -> PermLinComb:
        """Combination of ``P_q @ self``."""
        return PermLinComb.from_map({compose(q, p): c for p, c in self.terms})

    def to_json(self) -> list[dict]:
        return [{"perm": str(p), "coeff": str(c) if _is_exact_scalar(c) else float(c)} for p, c in self.terms]

    @classmethod
    def from_json(cls, obj) -> PermLinComb:
        items = []
        for t in obj:
            c = t["coeff"]
            items.append((parse_cycles(t["perm"]), float(c) if isinstance(c, float) else to_fraction(c)))
        return cls.from_map(items)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*P{p}" for p, c in self.terms)


# span membership ------------------------------------------------------------------


def in_perm_span(a: Mat, snap: bool = True) -> PermLinComb | None:
    """Coordinates of ``a`` in the basis, or None when ``a`` is outside the span.

    Approximate input is snapped to rationals first (if ``snap``) and the exact
    answer is then checked against the original within its tolerance.
    """
    if a.n != 4:
        raise ValueError("order 4 only")
    if a.is_exact:
        comb = _exact_coords(a)
        return comb if comb.evaluate(tol=0) == a else None
    if snap:
        comb = _exact_coords(a.to_exact())
        back = comb.evaluate(tol=0)
        if back == a.to_exact() and back.close(a, a.tol):
            return comb
    # irrational entries do not snap into the span exactly
    return _in_span_float(a)


def _exact_coords(a: Mat) -> PermLinComb:
    v = a.entries()
    linv = _basis_left_inverse()
    coords = [sum((r[i] * v[i] for i in range(16) if r[i]), Fraction(0)) for r in linv]
    return PermLinComb.from_map(zip(basis_B(), coords))


def _in_span_float(a: Mat) -> PermLinComb | None:
    v = [float(x) for x in a.entries()]
    linv = _basis_left_inverse()
    coords = [sum(float(r[i]) * v[i] for i in range(16)) for r in linv]
    comb = PermLinComb.from_map((p, c) for p, c in zip(basis_B(), coords) if abs(c) > a.tol)
    return comb if comb.evaluate(tol=a.tol).close(a, 10 * a.tol) else None


def subspace_membership(a: Mat | PermLinComb) -> frozenset[int]:
    """Smallest set of block indices whose subspaces' direct sum contains ``a``."""
    comb = a if isinstance(a, PermLinComb) else in_perm_span(a)
    if comb is None:
        raise NotInSpan("matrix is not a combination of permutation matrices")
    bad = [p for p in comb.support if p not in basis_B()]
    if bad:
        raise ValueError(f"combination is not in basis coordinates: {bad}")
    return frozenset(block_of(p) for p in comb.support)


# four-permutation form of an OPM ------------------------------------------------------


@dataclass(frozen=True)
class FourPermForm:
    """``P_pbar^T a`` written over the H-orthogonal quadruple of a family letter."""

    witness: FamilyWitness
    quadruple: tuple[Perm, ...]
    coeffs: tuple

    @property
    def combination(self) -> PermLinComb:
        return PermLinComb.from_map(zip(self.quadruple, self.coeffs))

    def reconstruct(self) -> Mat:
        """``P_pbar @ sum coeff P`` which equals the original matrix."""
        tol = 0 if all(_is_exact_scalar(c) for c in self.coeffs) else DEFAULT_TOL
        return self.combination.evaluate(tol).permute(left=self.witness.pbar)

    def to_json(self) -> dict:
        return {
            "witness": self.witness.to_json(),
            "quadruple": [str(p) for p in self.quadruple],
            "coeffs": [str(c) if _is_exact_scalar(c) else c for c in self.coeffs],
        }


def quadruple(letter: str) -> tuple[Perm, ...]:
    return tuple(parse_cycles(c) for c in QUADRUPLES[letter])


def variety_residuals(letter: str, coeffs) -> tuple:
    """(|sum| - 1, cross term, sum of squares - 1) for the four coefficients of a family letter."""
    x, y, z, w = coeffs
    cross = {"X": x * y + z * w, "Y": x * z + y * w, "Z": x * w + y * z}[letter]
    s = x + y + z + w
    return s * s - 1, cross, x * x + y * y + z * z + w * w - 1


def opm_as_four_perms(a: Mat, witness: FamilyWitness | None = None) -> FourPermForm:
    """Express ``P_pbar^T a`` over the quadruple of the witness family.

    Without a witness the first family membership found is used.
    """
    if witness is None:
        found = family_membership(a, first_only=True)
        if not found:
            raise ValueError("matrix is not a recognised orthogonal permutative matrix")
        witness = found[0]
    b = a.permute(left=witness.pbar.inverse())
    quad = quadruple(witness.fid.letter)
    coeffs = tuple(b[0, p(1) - 1] for p in quad)
    form = FourPermForm(witness, quad, coeffs)
    if not form.combination.evaluate(a.tol).close(b, a.tol or None):
        raise ValueError(f"witness {witness.to_json()} does not reproduce the matrix")
    return form


def four_perm_witnesses(a: Mat) -> list[FourPermForm]:
    """All four-permutation forms, one per family membership witness."""
    return [opm_as_four_perms(a, w) for w in family_membership(a)]


# splitting into permutative parts ------------------------------------------------------


def split_six_permutative(c: PermLinComb) -> list[tuple[PermClass, Mat]]:
    """Group terms by H-orthogonal class; each partial sum is permutative."""
    groups: dict[int, list] = {}
    for p, coeff in c.terms:
        groups.setdefault(class_of(p).index, []).append((p, coeff))
    tol = 0 if c.is_exact else DEFAULT_TOL
    parts = []
    classes = {cl.index: cl for cl in s4_partition()}
    for k in sorted(groups):
        parts.append((classes[k], PermLinComb.from_map(groups[k]).evaluate(tol)))
    return parts


# two-permutation combinations ------------------------------------------------------------


@dataclass(frozen=True)
class PairResult:
    p: Perm
    q: Perm
    overlap: int
    monomials: tuple[Fraction, Fraction]  # forced values of (a^2 + b^2, a b)
    solutions: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "pair": [str(self.p), str(self.q)],
            "overlap": self.overlap,
            "sum_of_squares": str(self.monomials[0]),
            "product": str(self.monomials[1]),
            "solutions": [list(s) for s in self.solutions],
        }


def gram_monomial_system(perms: tuple[Perm, ...]) -> tuple[list[list[int]], list[int], list[tuple[int, int]]]:
    """Linear system for ``A^T A = I`` with ``A = sum c_k P_k``.

    Unknowns are the sum of squares followed by each product ``c_i c_j`` (i < j);
    one equation per matrix entry.  Returns (rows, rhs, index pairs).
    """
    pairs = list(itertools.combinations(range(len(perms)), 2))
    mats = [to_matrix(p) for p in perms]
    cross = [mats[i].T @ mats[j] + mats[j].T @ mats[i] for i, j in pairs]
    rows, rhs = [], []
    for r in range(4):
        for s in range(4):
            rows.append([int(r == s)] + [int(m[r, s]) for m in cross])
            rhs.append(int(r == s))
    return rows, rhs, pairs


def _pair_solutions(m0: Fraction, m1: Fraction) -> tuple[tuple[int, int], ...]:
    # a^2 + b^2 = m0 and a b = m1 with m1 == 0: one coordinate vanishes
    if m1 != 0 or m0 != 1:
        raise AssertionError("unexpected monomial values")
    return ((1, 0), (-1, 0), (0, 1), (0, -1))


def two_perm_orthogonality_scan() -> list[PairResult]:
    """Solve orthogonality of ``a P + b Q`` for all 276 unordered pairs."""
    out = []
    for p, q in itertools.combinations(all_perms(4), 2):
        rows, rhs, _ = gram_monomial_system((p, q))
        sol = solve(rows, rhs)
        if sol is None:
            raise AssertionError(f"inconsistent system for {p}, {q}")
        particular, null = sol
        if null:
            raise AssertionError(f"underdetermined system for {p}, {q}")
        overlap = sum(p(i) == q(i) for i in range(1, 5))
        out.append(PairResult(p, q, overlap, (particular[0], particular[1]), _pair_solutions(*particular)))
    return out


# adding a permutation to an H-orthogonal combination --------------------------------------


@dataclass(frozen=True)
class AddPermResult:
    matrix: Mat
    orthogonal: bool
    permutative: bool | None  # None when not orthogonal: permutativity is not asserted


def add_perm_preserves_opm(a: Mat, c, p: Perm) -> AddPermResult:
    """Return ``a + c P_p`` where ``a`` lies in the span of pairwise H-orthogonal permutations.

    When the result is orthogonal it must be permutative; that is asserted.
    """
    comb = in_perm_span(a)
    if comb is None:
        raise ValueError("matrix is outside the permutation span")
    if h_orthogonal_support(a) is None:
        raise ValueError("matrix is not a combination of pairwise H-orthogonal permutations")
    b = a + to_matrix(p, a.tol) * a.scalar(c)
    if not is_orthogonal(b):
        return AddPermResult(b, False, None)
    perm = is_permutative(b)
    if not perm:
        raise AssertionError("orthogonal result is not permutative")
    return AddPermResult(b, True, True)


@lru_cache(maxsize=None)
def h_orthogonal_quadruples() -> tuple[tuple[Perm, ...], ...]:
    """All sets of four pairwise H-orthogonal permutations (one per reduced Latin square)."""
    perms = all_perms(4)
    out = []
    for quad in itertools.combinations(perms, 4):
        if all(h_orthogonal(a, b) for a, b in itertools.combinations(quad, 2)):
            out.append(quad)
    return tuple(out)


def h_orthogonal_support(a: Mat) -> tuple[Perm, ...] | None:
    """A pairwise H-orthogonal quadruple whose span contains ``a``, if any.

    On such a quadruple the coefficient of each member is the entry it puts in row 1.
    """
    for quad in h_orthogonal_quadruples():
        coeffs = [a[0, m(1) - 1] for m in quad]
        cand = PermLinComb.from_map(
            (m, c) for m, c in zip(quad, coeffs) if not a.is_zero(c)
        ).evaluate(0 if a.is_exact else a.tol)
        if cand.close(a, a.tol or None):
            return quad
    return None
