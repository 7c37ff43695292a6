"""Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns of a rational matrix."""
    a = [[Fraction(v) for v in r] for r in rows]
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve(a: Sequence[Sequence], b: Sequence) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """Solve ``a x = b`` exactly.

    Returns ``(particular, nullspace_basis)`` or None when inconsistent.
    """
    n = len(a[0])
    aug = [list(r) + [v] for r, v in zip(a, b)]
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    free = [c for c in range(n) if c not in piv]
    null = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(red, piv):
            v[c] = -row[f]
        null.append(v)
    return x, null


def left_inverse(cols: Sequence[Sequence]) -> list[list[Fraction]]:
    """For a full column rank m x k matrix V given as k column vectors, a k x m matrix L with L V = I.

    Built by eliminating ``[V | I_m]``; the rows of the reduced identity block
    paired with the pivots give L.
    """
    k = len(cols)
    m = len(cols[0])
    aug = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(int(i == t)) for t in range(m)] for i in range(m)]
    red, piv = rref(aug)
    if piv[:k] != list(range(k)):
        raise ValueError("columns are linearly dependent")
    return [red[i][k:] for i in range(k)]
