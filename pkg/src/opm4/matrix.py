"""Small dense matrices over exact rationals or binary64 floats.

A :class:`Mat` carries one backend for all of its entries.  ``tol == 0`` means the
entries are :class:`fractions.Fraction` and every predicate is an exact equality
test; ``tol > 0`` means floats compared with that absolute tolerance.  Mixing the
two backends in one operation raises :class:`BackendMismatch`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .perm import Perm, all_perms

DEFAULT_TOL = 1e-10
SNAP_DENOMINATOR = 10**6


class BackendMismatch(TypeError):
    pass


def _is_exact_scalar(v) -> bool:
    return isinstance(v, Rational) and not isinstance(v, bool)


def to_fraction(v) -> Fraction:
    """Parse ``"p/q"``, an int or a Fraction.  Floats are rejected; snap them explicitly."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    raise TypeError(f"cannot use {v!r} as an exact scalar")


def snap(v: float, max_denominator: int = SNAP_DENOMINATOR) -> Fraction:
    """Closest rational with bounded denominator (continued fractions)."""
    return Fraction(v).limit_denominator(max_denominator)


@dataclass(frozen=True)
class Mat:
    rows: tuple[tuple, ...]
    tol: float = 0.0

    def __post_init__(self):
        n = len(self.rows)
        if n == 0 or any(len(r) != n for r in self.rows):
            raise ValueError("matrices are square and non-empty")
        if self.tol < 0:
            raise ValueError("tolerance must be nonnegative")
        exact = self.tol == 0
        for r in self.rows:
            for v in r:
                if exact and not isinstance(v, Fraction):
                    raise BackendMismatch(f"exact matrix holds non-Fraction entry {v!r}")
                if not exact and not isinstance(v, float):
                    raise BackendMismatch(f"approx matrix holds non-float entry {v!r}")

    # construction -------------------------------------------------------

    @classmethod
    def exact(cls, rows: Iterable[Iterable]) -> Mat:
        return cls(tuple(tuple(to_fraction(v) for v in r) for r in rows))

    @classmethod
    def approx(cls, rows: Iterable[Iterable], tol: float = DEFAULT_TOL) -> Mat:
        if tol <= 0:
            raise ValueError("approx matrices need a positive tolerance")
        return cls(tuple(tuple(float(v) for v in r) for r in rows), tol)

    @classmethod
    def of(cls, rows: Iterable[Iterable], tol: float | None = None) -> Mat:
        """Pick the backend from the entries: any float -> approx, otherwise exact.

        Floats may be mixed with ints but not with Fractions or "p/q" strings.
        """
        rows = [list(r) for r in rows]
        flat = [v for r in rows for v in r]
        if any(isinstance(v, float) for v in flat):
            if any(isinstance(v, str) or (_is_exact_scalar(v) and not isinstance(v, int)) for v in flat):
                raise BackendMismatch("mixed exact and float entries")
            return cls.approx(rows, tol or DEFAULT_TOL)
        if tol:
            return cls.approx([[float(to_fraction(v)) for v in r] for r in rows], tol)
        return cls.exact(rows)

    @classmethod
    def identity(cls, n: int = 4, tol: float = 0.0) -> Mat:
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.approx(rows, tol) if tol else cls.exact(rows)

    @classmethod
    def zeros(cls, n: int = 4, tol: float = 0.0) -> Mat:
        rows = [[0] * n for _ in range(n)]
        return cls.approx(rows, tol) if tol else cls.exact(rows)

    @classmethod
    def ones(cls, n: int = 4, tol: float = 0.0) -> Mat:
        rows = [[1] * n for _ in range(n)]
        return cls.approx(rows, tol) if tol else cls.exact(rows)

    # basic access ---------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def is_exact(self) -> bool:
        return self.tol == 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self) -> list:
        return [v for r in self.rows for v in r]

    def scalar(self, v):
        """Coerce a Python number into this matrix's backend."""
        if self.is_exact:
            if not _is_exact_scalar(v):
                raise BackendMismatch(f"{v!r} is not exact")
            return Fraction(v)
        return float(v)

    def _check(self, other: Mat):
        if self.is_exact != other.is_exact:
            raise BackendMismatch("exact and approx matrices cannot be combined")
        if self.n != other.n:
            raise ValueError("order mismatch")

    # ring operations -----------------------------------------------------

    def __add__(self, other: Mat) -> Mat:
        self._check(other)
        rows = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Mat(rows, max(self.tol, other.tol))

    def __sub__(self, other: Mat) -> Mat:
        self._check(other)
        rows = tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Mat(rows, max(self.tol, other.tol))

    def __neg__(self) -> Mat:
        return Mat(tuple(tuple(-a for a in r) for r in self.rows), self.tol)

    def __mul__(self, c) -> Mat:
        c = self.scalar(c)
        return Mat(tuple(tuple(c * a for a in r) for r in self.rows), self.tol)

    __rmul__ = __mul__

    def __matmul__(self, other: Mat) -> Mat:
        self._check(other)
        cols = list(zip(*other.rows))
        if self.is_exact:
            # integer products over a common denominator, normalised once per entry
            da, na = _integer_rows(self.rows)
            db, nb = _integer_rows(cols)
            d = da * db
            rows = tuple(tuple(Fraction(sum(x * y for x, y in zip(r, c)), d) for c in nb) for r in na)
            return Mat(rows)
        rows = tuple(tuple(sum((a * b for a, b in zip(r, c)), 0.0) for c in cols) for r in self.rows)
        return Mat(rows, max(self.tol, other.tol))

    @property
    def T(self) -> Mat:
        return Mat(tuple(zip(*self.rows)), self.tol)

    def det(self):
        """Gaussian elimination; exact over Fractions, partial pivoting for floats."""
        n = self.n
        a = [list(r) for r in self.rows]
        total = Fraction(1) if self.is_exact else 1.0
        for k in range(n):
            rows = range(k, n)
            piv = next((i for i in rows if a[i][k] != 0), None) if self.is_exact else max(rows, key=lambda i: abs(a[i][k]))
            if piv is None or a[piv][k] == 0:
                return total * 0
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                total = -total
            total *= a[k][k]
            for i in range(k + 1, n):
                f = a[i][k] / a[k][k]
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return total

    # index permutations -----------------------------------------------------

    def permute(self, left: Perm | None = None, right: Perm | None = None) -> Mat:
        """Return ``P_left @ self @ P_right`` without multiplying."""
        rows = self.rows
        if left is not None:
            rows = tuple(rows[left(i + 1) - 1] for i in range(self.n))
        if right is not None:
            inv = right.inverse()
            rows = tuple(tuple(r[inv(j + 1) - 1] for j in range(self.n)) for r in rows)
        return Mat(rows, self.tol)

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> Mat:
        return Mat(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), self.tol)

    # comparisons --------------------------------------------------------------

    def close(self, other: Mat, tol: float | None = None) -> bool:
        if self.n != other.n:
            return False
        if tol is None:
            tol = max(self.tol, other.tol)
        if tol == 0:
            return self.rows == other.rows
        return all(abs(float(a) - float(b)) <= tol for a, b in zip(self.entries(), other.entries()))

    def is_zero(self, v) -> bool:
        return v == 0 if self.is_exact else abs(v) <= self.tol

    def to_exact(self, max_denominator: int = SNAP_DENOMINATOR) -> Mat:
        if self.is_exact:
            return self
        return Mat(tuple(tuple(snap(v, max_denominator) for v in r) for r in self.rows))

    def to_approx(self, tol: float = DEFAULT_TOL) -> Mat:
        return Mat.approx(self.rows, tol)

    def __str__(self) -> str:
        cells = [[str(v) for v in r] for r in self.rows]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


def _integer_rows(rows) -> tuple[int, list[list[int]]]:
    d = math.lcm(*(v.denominator for r in rows for v in r))
    return d, [[v.numerator * (d // v.denominator) for v in r] for r in rows]


def _sign(p: Perm) -> int:
    s = 1
    for i, j in itertools.combinations(range(p.n), 2):
        if p.image[i] > p.image[j]:
            s = -s
    return s


def sign(p: Perm) -> int:
    return _sign(p)


def to_matrix(p: Perm, tol: float = 0.0) -> Mat:
    """Permutation matrix with entry (i, j) = 1 iff p(i) = j."""
    rows = [[1 if p(i + 1) == j + 1 else 0 for j in range(p.n)] for i in range(p.n)]
    return Mat.approx(rows, tol) if tol else Mat.exact(rows)


def direct_sum(*blocks: Mat) -> Mat:
    tol = max(b.tol for b in blocks)
    if any(b.is_exact != blocks[0].is_exact for b in blocks):
        raise BackendMismatch("blocks use different backends")
    n = sum(b.n for b in blocks)
    zero = Fraction(0) if tol == 0 else 0.0
    rows = [[zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                rows[off + i][off + j] = b.rows[i][j]
        off += b.n
    return Mat(tuple(tuple(r) for r in rows), tol)


def scalar_block(v, tol: float = 0.0) -> Mat:
    return Mat(((float(v) if tol else Fraction(v),),), tol)


# structural predicates ---------------------------------------------------


def orthogonality_residual(a: Mat) -> float:
    """max |(A^T A - I)_{ij}| as a float."""
    g = a.T @ a
    return max(
        abs(float(g.rows[i][j]) - (1.0 if i == j else 0.0)) for i in range(a.n) for j in range(a.n)
    )


def is_orthogonal(a: Mat) -> bool:
    g = a.T @ a
    if a.is_exact:
        return g == Mat.identity(a.n)
    return orthogonality_residual(a) <= a.tol


def is_permutative(a: Mat) -> bool:
    """Every row holds the same multiset of entries as the first row."""
    first = sorted(a.rows[0])
    for r in a.rows[1:]:
        s = sorted(r)
        if a.is_exact:
            if s != first:
                return False
        elif any(abs(x - y) > a.tol for x, y in zip(s, first)):
            return False
    return True


def permutative_gap(a: Mat) -> float:
    """Largest deviation between sorted rows and the sorted first row."""
    first = sorted(float(v) for v in a.rows[0])
    return max(
        abs(x - y) for r in a.rows[1:] for x, y in zip(sorted(float(v) for v in r), first)
    )


def row_col_sums(a: Mat) -> tuple[tuple, tuple]:
    zero = Fraction(0) if a.is_exact else 0.0
    rows = tuple(sum(r, zero) for r in a.rows)
    cols = tuple(sum(c, zero) for c in zip(*a.rows))
    return rows, cols


def constant_line_sum(a: Mat):
    """The common row/column sum, or None if the sums are not all equal."""
    rows, cols = row_col_sums(a)
    s = rows[0]
    for v in rows + cols:
        if not a.is_zero(v - s):
            return None
    return s


def is_signed_permutation(a: Mat) -> tuple[int, Perm] | None:
    """(sign, p) with a = sign * P_p, or None."""
    for s in (1, -1):
        image = []
        for r in a.rows:
            hits = [j for j, v in enumerate(r) if a.is_zero(v - s)]
            rest = [j for j, v in enumerate(r) if not a.is_zero(v)]
            if len(hits) != 1 or rest != hits:
                break
            image.append(hits[0] + 1)
        else:
            if sorted(image) == list(range(1, a.n + 1)):
                return s, Perm(tuple(image))
    return None


HADAMARD = Mat.exact(
    [[Fraction(v, 2) for v in r] for r in [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]]]
)


def hadamard(tol: float = 0.0) -> Mat:
    return HADAMARD.to_approx(tol) if tol else HADAMARD


def conjugate_hadamard(a: Mat) -> Mat:
    """H @ a @ H for the symmetric orthogonal 4x4 Hadamard matrix H."""
    h = hadamard(a.tol)
    return h @ a @ h


# patterns -------------------------------------------------------------------


@dataclass(frozen=True)
class Pattern:
    bits: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for r in self.bits:
            if len(r) != len(self.bits[0]):
                raise ValueError("ragged pattern")
            for b in r:
                if b not in (0, 1):
                    raise ValueError("pattern entries must be 0 or 1")

    @classmethod
    def from_text(cls, text: str) -> Pattern:
        return cls(tuple(tuple(int(ch) for ch in row.strip()) for row in text.split(",")))

    @classmethod
    def from_json(cls, rows: Sequence[str]) -> Pattern:
        return cls(tuple(tuple(int(ch) for ch in row) for row in rows))

    @classmethod
    def from_mask(cls, mask: int, n: int = 4) -> Pattern:
        return cls(tuple(tuple((mask >> (i * n + j)) & 1 for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def is_square(self) -> bool:
        return all(len(r) == len(self.bits) for r in self.bits)

    def to_text(self) -> str:
        return ",".join("".join(str(b) for b in r) for r in self.bits)

    def to_json(self) -> list[str]:
        return ["".join(str(b) for b in r) for r in self.bits]

    @property
    def T(self) -> Pattern:
        return Pattern(tuple(zip(*self.bits)))

    def permute(self, left: Perm | None = None, right: Perm | None = None) -> Pattern:
        bits = self.bits
        if left is not None:
            bits = tuple(bits[left(i + 1) - 1] for i in range(self.n))
        if right is not None:
            inv = right.inverse()
            bits = tuple(tuple(r[inv(j + 1) - 1] for j in range(self.n)) for r in bits)
        return Pattern(bits)

    def __str__(self) -> str:
        return self.to_text()


def pattern_of(a: Mat) -> Pattern:
    return Pattern(tuple(tuple(0 if a.is_zero(v) else 1 for v in r) for r in a.rows))


# direct sums up to row/column permutations ---------------------------------


@dataclass(frozen=True)
class DirectSumForm:
    """``left`` and ``right`` permute ``a`` so that ``P_left a P_right`` is block diagonal."""

    left: Perm
    right: Perm
    sizes: tuple[int, ...]

    def apply(self, a: Mat) -> Mat:
        return a.permute(self.left, self.right)

    def to_json(self) -> dict:
        return {"left": str(self.left), "right": str(self.right), "sizes": list(self.sizes)}


def _offdiag_zero(bits, sizes) -> bool:
    off = 0
    n = len(bits)
    for s in sizes:
        for i in range(off, off + s):
            r = bits[i]
            for j in range(n):
                if (j < off or j >= off + s) and r[j]:
                    return False
        off += s
    return True


def find_direct_sum_form(a: Mat) -> DirectSumForm | None:
    """First (left, right), in lexicographic order, making ``a`` block diagonal.

    Blockings are tried coarsest first with (1, n-1) preferred over (2, n-2).
    """
    pat = pattern_of(a)
    n = a.n
    perms = all_perms(n)
    for sizes in [(k, n - k) for k in range(1, n // 2 + 1)]:
        for x in perms:
            rows = pat.permute(left=x).bits
            for y in perms:
                inv = y.inverse()
                bits = tuple(tuple(r[inv(j + 1) - 1] for j in range(n)) for r in rows)
                if _offdiag_zero(bits, sizes):
                    return DirectSumForm(x, y, sizes)
    return None


# JSON ------------------------------------------------------------------------


def mat_to_json(a: Mat) -> list[list]:
    if a.is_exact:
        return [[str(v) for v in r] for r in a.rows]
    return [[v for v in r] for r in a.rows]


def mat_from_json(obj, tol: float = DEFAULT_TOL) -> Mat:
    """Strings and ints give an exact matrix; any float makes the matrix approximate."""
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ValueError("matrix JSON must be a non-empty list of rows")
    flat = [v for r in obj for v in r]
    if any(isinstance(v, bool) or not isinstance(v, (str, int, float)) for v in flat):
        raise ValueError("matrix entries must be strings or numbers")
    if any(isinstance(v, float) for v in flat):
        if any(isinstance(v, str) for v in flat):
            raise BackendMismatch("mixed exact strings and float entries")
        return Mat.approx(obj, tol)
    return Mat.exact(obj)
