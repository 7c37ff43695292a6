"""Permutations of {1,...,n} for n <= 4, in cycle notation.

Convention: the permutation matrix of ``p`` has a 1 in entry (i, j) exactly when
``p(i) = j``.  With that convention ``P_p @ P_q`` is the matrix of "apply p, then
q", which is what :func:`compose` returns.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

_CYCLE_RE = re.compile(r"\(([0-9]*)\)")


@dataclass(frozen=True, order=True)
class Perm:
    """A bijection on {1, ..., n}; ``image[i-1]`` is the image of ``i``."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if n not in (1, 2, 3, 4):
            raise ValueError(f"only orders 1..4 are supported, got {n}")
        if sorted(self.image) != list(range(1, n + 1)):
            raise ValueError(f"{self.image} is not a permutation of 1..{n}")

    @classmethod
    def identity(cls, n: int = 4) -> Perm:
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __mul__(self, other: Perm) -> Perm:
        return compose(self, other)

    def inverse(self) -> Perm:
        inv = [0] * self.n
        for i, j in enumerate(self.image, start=1):
            inv[j - 1] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return self.image == tuple(range(1, self.n + 1))

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if self(i) == i)

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest element."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Perm({format_cycles(self)!r})"

    def to_json(self) -> list[int]:
        return list(self.image)

    @classmethod
    def from_json(cls, obj) -> Perm:
        return cls(tuple(int(v) for v in obj))


def parse_cycles(text: str, n: int = 4) -> Perm:
    """Parse ``"(13)(24)"``, ``"(1324)"``, ``"id"`` or ``"()"`` into a Perm of order n.

    Cycles must be disjoint; single digits only, whitespace is ignored.
    """
    s = "".join(text.split())
    if s in ("id", "()", ""):
        if s == "":
            raise ValueError("empty cycle string")
        return Perm.identity(n)
    pos = 0
    image = list(range(1, n + 1))
    used: set[int] = set()
    while pos < len(s):
        m = _CYCLE_RE.match(s, pos)
        if m is None:
            raise ValueError(f"malformed cycle notation at {s[pos:]!r} in {text!r}")
        elems = [int(ch) for ch in m.group(1)]
        for e in elems:
            if not 1 <= e <= n:
                raise ValueError(f"element {e} out of range 1..{n} in {text!r}")
            if e in used:
                raise ValueError(f"element {e} repeated in {text!r}")
            used.add(e)
        for a, b in zip(elems, elems[1:] + elems[:1]):
            image[a - 1] = b
        pos = m.end()
    return Perm(tuple(image))


def format_cycles(p: Perm) -> str:
    cyc = p.cycles()
    if not cyc:
        return "id"
    return "".join("(" + "".join(str(e) for e in c) + ")" for c in cyc)


def cyc(text: str, n: int = 4) -> Perm:
    """Shorthand for :func:`parse_cycles`."""
    return parse_cycles(text, n)


def compose(p: Perm, q: Perm) -> Perm:
    """Apply ``p`` first and then ``q``; matches ``matrix(p) @ matrix(q)``."""
    if p.n != q.n:
        raise ValueError("orders differ")
    return Perm(tuple(q(p(i)) for i in range(1, p.n + 1)))


def inverse(p: Perm) -> Perm:
    return p.inverse()


def h_orthogonal(p: Perm, q: Perm) -> bool:
    """True iff the permutation matrices have disjoint supports (p(i) != q(i) for all i)."""
    return all(a != b for a, b in zip(p.image, q.image))


@lru_cache(maxsize=None)
def all_perms(n: int = 4) -> tuple[Perm, ...]:
    """All permutations of order n in lexicographic order of their image arrays."""
    return tuple(Perm(t) for t in itertools.permutations(range(1, n + 1)))


@lru_cache(maxsize=None)
def fixing_one(n: int = 4) -> tuple[Perm, ...]:
    """Permutations fixing 1, i.e. the prefixes 1 + P_{n-1}."""
    return tuple(p for p in all_perms(n) if p(1) == 1)


@dataclass(frozen=True)
class PermClass:
    """Four pairwise H-orthogonal permutations of order 4."""

    index: int
    members: tuple[Perm, ...]

    def __post_init__(self):
        if len(self.members) != 4 or len(set(self.members)) != 4:
            raise ValueError("a class holds exactly 4 distinct permutations")
        for a, b in itertools.combinations(self.members, 2):
            if not h_orthogonal(a, b):
                raise ValueError(f"{a} and {b} are not H-orthogonal")

    def __contains__(self, p: Perm) -> bool:
        return p in self.members

    def to_json(self) -> dict:
        return {"index": self.index, "members": [str(p) for p in self.members]}


_PARTITION = (
    ("id", "(12)(34)", "(13)(24)", "(14)(23)"),
    ("(23)", "(124)", "(1342)", "(143)"),
    ("(24)", "(123)", "(134)", "(1432)"),
    ("(34)", "(12)", "(1324)", "(1423)"),
    ("(14)", "(1243)", "(132)", "(234)"),
    ("(13)", "(1234)", "(142)", "(243)"),
)


@lru_cache(maxsize=None)
def s4_partition() -> tuple[PermClass, ...]:
    """The six classes of four pairwise H-orthogonal permutations covering S4."""
    return tuple(
        PermClass(k, tuple(parse_cycles(c) for c in cls))
        for k, cls in enumerate(_PARTITION, start=1)
    )


def class_of(p: Perm) -> PermClass:
    for cls in s4_partition():
        if p in cls:
            return cls
    raise ValueError(f"{p} is not in S4")
