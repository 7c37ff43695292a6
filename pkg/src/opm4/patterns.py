"""Zero/nonzero pattern tests: quadrangularity and strong quadrangularity.

Rows and columns are handled as integer bitmasks so that sweeping all 2^16
patterns of order 4 stays cheap.
"""

from __future__ import annotations

from itertools import combinations

from .matrix import Pattern


def _row_masks(bits) -> list[int]:
    return [sum(b << j for j, b in enumerate(r)) for r in bits]


def _col_masks(bits) -> list[int]:
    return _row_masks(tuple(zip(*bits)))


def _square(m: Pattern):
    if not m.is_square:
        raise ValueError("pattern must be square")


def _lines_quadrangular(masks: list[int]) -> bool:
    return all(bin(a & b).count("1") != 1 for a, b in combinations(masks, 2))


def _lines_strong(masks: list[int]) -> bool:
    """Every linked subset S of lines has at least |S| positions shared by two of its lines.

    S is linked when each member meets (nonzero inner product) some other member.
    """
    n = len(masks)
    for size in range(2, n + 1):
        for idx in combinations(range(n), size):
            sub = [masks[i] for i in idx]
            if not all(any(a & b for j, b in enumerate(sub) if j != i) for i, a in enumerate(sub)):
                continue
            # positions covered by at least two lines of S
            seen = twice = 0
            for a in sub:
                twice |= seen & a
                seen |= a
            if bin(twice).count("1") < size:
                return False
    return True


def is_quadrangular(m: Pattern) -> bool:
    """No two distinct rows and no two distinct columns have inner product exactly 1."""
    _square(m)
    return _lines_quadrangular(_row_masks(m.bits)) and _lines_quadrangular(_col_masks(m.bits))


def is_row_strongly_quadrangular(m: Pattern) -> bool:
    _square(m)
    return _lines_strong(_row_masks(m.bits))


def is_col_strongly_quadrangular(m: Pattern) -> bool:
    _square(m)
    return _lines_strong(_col_masks(m.bits))


def is_strongly_quadrangular(m: Pattern) -> bool:
    """Row and column strong quadrangularity, quantified over every linked subset."""
    return is_row_strongly_quadrangular(m) and is_col_strongly_quadrangular(m)


def supports_unitary_small(m: Pattern) -> bool:
    """Whether some unitary has exactly this support; valid criterion for orders up to 4."""
    if m.n > 4:
        raise ValueError("criterion only holds for order <= 4")
    return is_strongly_quadrangular(m)


def sweep_order4() -> dict:
    """Counts over all 2^16 order-4 patterns, including violations of SQ => Q."""
    quad = strong = violations = 0
    first_violation = None
    for mask in range(1 << 16):
        p = Pattern.from_mask(mask)
        q = is_quadrangular(p)
        s = is_strongly_quadrangular(p)
        quad += q
        strong += s
        if s and not q:
            violations += 1
            if first_violation is None:
                first_violation = p.to_text()
    return {
        "patterns": 1 << 16,
        "quadrangular": quad,
        "strongly_quadrangular": strong,
        "violations": violations,
        "first_violation": first_violation,
    }
