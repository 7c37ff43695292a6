"""Structural classification of 4x4 orthogonal matrices in the permutation span.

Pipeline (first match wins): orthogonality, span membership, permutative with a
family witness, direct sum of OPMs after row/column permutations, Hadamard
conjugate with a 1 + 3 block form, otherwise irreducible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .families import (
    all_family_ids,
    c_bar_membership,
    c_set_rational,
    family_element,
    family_membership,
    family_point,
    opm3_element,
    opm3_membership,
)
from .linalg import rref
from .matrix import (
    DEFAULT_TOL,
    DirectSumForm,
    Mat,
    _is_exact_scalar,
    direct_sum,
    find_direct_sum_form,
    hadamard,
    is_orthogonal,
    is_permutative,
    is_signed_permutation,
    mat_to_json,
    scalar_block,
    to_matrix,
)
from .perm import Perm, all_perms
from .span import PermLinComb, gram_monomial_system, in_perm_span, subspace_membership

NOT_ORTHOGONAL = "not-orthogonal"
NOT_IN_SPAN = "not-in-span"
PERMUTATIVE = "permutative"
DIRECT_SUM = "perm-equivalent-direct-sum"
HADAMARD_BLOCK = "hadamard-block"
IRREDUCIBLE = "irreducible"
TAGS = (NOT_ORTHOGONAL, NOT_IN_SPAN, PERMUTATIVE, DIRECT_SUM, HADAMARD_BLOCK, IRREDUCIBLE)
STRUCTURAL_TAGS = frozenset({PERMUTATIVE, DIRECT_SUM, HADAMARD_BLOCK, IRREDUCIBLE})


class NotOrthogonal(ValueError):
    pass


def _js(v):
    return str(v) if _is_exact_scalar(v) else float(v)


# witnesses ------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedPermWitness:
    sign: int
    perm: Perm

    def reconstruct(self, tol: float = 0.0) -> Mat:
        return to_matrix(self.perm, tol) * self.sign

    def to_json(self) -> dict:
        return {"sign": self.sign, "perm": str(self.perm)}


@dataclass(frozen=True)
class BlockWitness:
    """A diagonal block: a scalar +-1, a signed 2x2 permutation, or an order-3 OPM."""

    kind: str  # "scalar", "opm2" or "opm3"
    matrix: Mat
    opm3: tuple | None = None  # (set name, x, y)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "matrix": mat_to_json(self.matrix)}
        if self.opm3 is not None:
            which, x, y = self.opm3
            out["set"] = which
            out["x"], out["y"] = _js(x), _js(y)
        return out


@dataclass(frozen=True)
class DirectSumWitness:
    """``P_left a P_right`` is block diagonal with the listed OPM blocks."""

    form: DirectSumForm
    blocks: tuple[BlockWitness, ...]
    signed_permutation: SignedPermWitness | None = None

    def reconstruct(self) -> Mat:
        d = direct_sum(*(b.matrix for b in self.blocks))
        return d.permute(self.form.left.inverse(), self.form.right.inverse())

    def to_json(self) -> dict:
        out = {"form": self.form.to_json(), "blocks": [b.to_json() for b in self.blocks]}
        if self.signed_permutation is not None:
            out["signed_permutation"] = self.signed_permutation.to_json()
        return out


@dataclass(frozen=True)
class HadamardWitness:
    """``H (P_left a P_right) H`` equals ``sign (+) block``."""

    left: Perm
    right: Perm
    sign: object
    block: Mat
    opm3: tuple  # (set name, x, y)
    cbar: tuple | None = None  # (set name, a4, c2) when the block is in C1bar or C2bar

    def reconstruct(self) -> Mat:
        h = hadamard(self.block.tol)
        inner = h @ direct_sum(scalar_block(self.sign, self.block.tol), self.block) @ h
        return inner.permute(self.left.inverse(), self.right.inverse())

    def to_json(self) -> dict:
        which, x, y = self.opm3
        out = {
            "left": str(self.left),
            "right": str(self.right),
            "sign": _js(self.sign),
            "block": mat_to_json(self.block),
            "opm3": {"set": which, "x": _js(x), "y": _js(y)},
        }
        if self.cbar is not None:
            name, a4, c2 = self.cbar
            out["cbar"] = {"set": name + "bar", "a4": _js(a4), "c2": _js(c2)}
        return out


@dataclass(frozen=True)
class Classification:
    tag: str
    witness: object = None
    membership: frozenset | None = None
    combination: PermLinComb | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def reconstruct(self) -> Mat | None:
        return None if self.witness is None else self.witness.reconstruct()

    def to_json(self) -> dict:
        out = {"tag": self.tag}
        if self.membership is not None:
            out["membership"] = sorted(self.membership)
        if self.combination is not None:
            out["combination"] = self.combination.to_json()
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.notes:
            out["notes"] = list(self.notes)
        return out


# direct sums -----------------------------------------------------------------------


def _block_witness(blk: Mat) -> BlockWitness | None:
    if blk.n == 1:
        v = blk[0, 0]
        return BlockWitness("scalar", blk) if blk.is_zero(abs(v) - 1) else None
    if blk.n == 2:
        return BlockWitness("opm2", blk) if is_signed_permutation(blk) is not None else None
    if blk.n == 3:
        hit = opm3_membership(blk)
        return BlockWitness("opm3", blk, hit) if hit is not None else None
    return None


def direct_sum_catalog(a: Mat) -> DirectSumWitness | None:
    """Reduce ``a`` to a block diagonal form and validate every block as an OPM.

    For a +1 scalar block the order-3 block must be in X1bar/Z1bar, for -1 in
    Y-1bar/W-1bar.  A signed permutation matrix is flagged as such.
    """
    form = find_direct_sum_form(a)
    if form is None:
        return None
    b = form.apply(a)
    off = 0
    blocks = []
    for s in form.sizes:
        idx = list(range(off, off + s))
        w = _block_witness(b.block(idx, idx))
        if w is None:
            return None
        blocks.append(w)
        off += s
    if form.sizes == (1, 3):
        sign = blocks[0].matrix[0, 0]
        allowed = ("X1bar", "Z1bar") if sign > 0 else ("Y-1bar", "W-1bar")
        if blocks[1].opm3[0] not in allowed:
            return None
    sp = is_signed_permutation(a)
    return DirectSumWitness(form, tuple(blocks), SignedPermWitness(*sp) if sp else None)


# Hadamard conjugation ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _reduced_perm_blocks(exact: bool) -> tuple[tuple[Perm, Mat], ...]:
    """(p, 3x3 block of H P_p H) for all 24 permutations; H P H = 1 (+) block."""
    h = hadamard()
    out = []
    for p in all_perms(4):
        c = h @ to_matrix(p) @ h
        blk = c.block([1, 2, 3], [1, 2, 3])
        out.append((p, blk if exact else blk.to_approx(DEFAULT_TOL)))
    return tuple(out)


def hadamard_block_search(a: Mat) -> HadamardWitness | None:
    """First (X, Y) with ``H (X a Y) H = (+-1) (+) B`` and B an order-3 OPM.

    Blocks in C1bar/C2bar are preferred; the search order is lexicographic in (X, Y).
    """
    c = hadamard(a.tol) @ a @ hadamard(a.tol)
    if not all(c.is_zero(c[0, k]) and c.is_zero(c[k, 0]) for k in (1, 2, 3)):
        return None
    sign = c[0, 0]
    if c.is_zero(abs(sign) - 1):
        sign = sign if a.is_exact else float(round(sign))
    else:
        return None
    inner = c.block([1, 2, 3], [1, 2, 3])
    reduced = _reduced_perm_blocks(a.is_exact)
    if not a.is_exact:
        reduced = tuple((p, Mat(m.rows, a.tol)) for p, m in reduced)
    candidates = []
    for (x, bx), (y, by) in itertools.product(reduced, reduced):
        blk = bx @ inner @ by
        cb = c_bar_membership(blk)
        if cb is not None:
            hit = opm3_membership(blk)
            return HadamardWitness(x, y, sign, blk, hit, cb)
        candidates.append((x, y, blk))
    for x, y, blk in candidates:
        hit = opm3_membership(blk)
        if hit is not None:
            return HadamardWitness(x, y, sign, blk, hit, None)
    return None


# the pipeline --------------------------------------------------------------------------


def classify_orthogonal(a: Mat, snap: bool = True) -> Classification:
    if a.n != 4:
        raise ValueError("order 4 only")
    if not is_orthogonal(a):
        return Classification(NOT_ORTHOGONAL)
    comb = in_perm_span(a, snap=snap)
    if comb is None:
        return Classification(NOT_IN_SPAN)
    membership = subspace_membership(comb)
    if is_permutative(a):
        found = family_membership(a, first_only=True)
        if not found:
            raise AssertionError("orthogonal permutative matrix outside every family")
        return Classification(PERMUTATIVE, found[0], membership, comb)
    ds = direct_sum_catalog(a)
    if ds is not None:
        return Classification(DIRECT_SUM, ds, membership, comb)
    hb = hadamard_block_search(a)
    if hb is not None:
        return Classification(HADAMARD_BLOCK, hb, membership, comb)
    return Classification(IRREDUCIBLE, None, membership, comb)


# which theorems constrain a subspace sum --------------------------------------------------

ALL_STRUCTURAL = STRUCTURAL_TAGS
_ONLY_PERMUTATIVE = frozenset({PERMUTATIVE})
_BLOCK_FORMS = frozenset({PERMUTATIVE, DIRECT_SUM, HADAMARD_BLOCK})


def _covered_sets() -> list[tuple[frozenset, frozenset, str]]:
    rules = []
    for i, j in itertools.combinations(range(1, 6), 2):
        rules.append((frozenset({i, j}), _ONLY_PERMUTATIVE, "two blocks"))
    for i, j in itertools.combinations(range(2, 6), 2):
        if (i, j) not in ((2, 5), (3, 4)):
            rules.append((frozenset({1, i, j}), _ONLY_PERMUTATIVE, "block 1 with two further blocks"))
    for ijk in itertools.combinations(range(2, 6), 3):
        rules.append((frozenset(ijk), _ONLY_PERMUTATIVE, "three blocks without block 1"))
    rules.append((frozenset({2, 3, 4, 5}), _ONLY_PERMUTATIVE, "all blocks but block 1"))
    rules.append((frozenset({1, 3, 4}), _BLOCK_FORMS, "blocks 1, 3, 4"))
    return rules


@dataclass(frozen=True)
class Gate:
    membership: frozenset
    rules: tuple[str, ...]
    permitted: frozenset

    @property
    def covered(self) -> bool:
        return bool(self.rules)

    def to_json(self) -> dict:
        return {"membership": sorted(self.membership), "rules": list(self.rules), "permitted": sorted(self.permitted)}


def theorem_gate(a: Mat | frozenset | set) -> Gate:
    """Permitted tags: intersection over every covered sum containing the membership set."""
    membership = frozenset(a) if isinstance(a, (set, frozenset)) else subspace_membership(a)
    permitted = set(ALL_STRUCTURAL)
    rules = []
    for sset, allowed, name in _covered_sets():
        if membership <= sset:
            permitted &= allowed
            if name not in rules:
                rules.append(name)
    return Gate(membership, tuple(rules), frozenset(permitted))


# three permutations -----------------------------------------------------------------------


def three_perm_classify(p: Perm, q: Perm, r: Perm, alpha, beta, gamma, tol: float | None = None) -> Classification:
    """Classify ``alpha P + beta Q + gamma R``: a signed permutation or a 1 + 3 direct sum."""
    if len({p, q, r}) != 3:
        raise ValueError("permutations must be distinct")
    coeffs = (alpha, beta, gamma)
    exact = tol is None and all(_is_exact_scalar(c) for c in coeffs)
    t = 0.0 if exact else (tol or DEFAULT_TOL)
    comb = PermLinComb.from_map((s, c) for s, c in zip((p, q, r), coeffs) if c != 0)
    a = comb.evaluate(t) if len(comb) else Mat.zeros(4, t)
    if not is_orthogonal(a):
        raise NotOrthogonal("combination is not orthogonal")
    sp = is_signed_permutation(a)
    if sp is not None:
        return Classification(PERMUTATIVE, SignedPermWitness(*sp), combination=comb)
    ds = direct_sum_catalog(a)
    if ds is not None:
        return Classification(DIRECT_SUM, ds, combination=comb)
    return Classification(IRREDUCIBLE, None, combination=comb)


def _conj_canon(q: Perm, r: Perm) -> tuple:
    best = None
    for s in all_perms(4):
        si = s.inverse()
        key = tuple(sorted(((si * q * s).image, (si * r * s).image)))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def triple_orbits() -> tuple[tuple[Perm, Perm], ...]:
    """Representatives {id, q, r} of all triples up to left multiplication and conjugation.

    Left multiplication by P^T moves any triple to one containing the identity;
    simultaneous conjugation fixes the identity.  Both preserve orthogonality and
    the two structural outcomes, so these representatives cover all 2024 triples.
    """
    ident = Perm.identity(4)
    others = [p for p in all_perms(4) if p != ident]
    reps: dict[tuple, tuple[Perm, Perm]] = {}
    for q, r in itertools.combinations(others, 2):
        reps.setdefault(_conj_canon(q, r), (q, r))
    return tuple(reps[k] for k in sorted(reps))


def three_perm_constraints(q: Perm, r: Perm) -> list[list[Fraction]]:
    """Independent linear equations on (sum of squares, ab, ac, bc) with last entry the rhs."""
    rows, rhs, _ = gram_monomial_system((Perm.identity(4), q, r))
    red, piv = rref([row + [v] for row, v in zip(rows, rhs)])
    return [row for row in red[: len(piv)]]


_SAMPLE_VALUES = tuple(Fraction(k, 7) for k in range(-7, 8))


def three_perm_scan(samples: bool = True) -> list[dict]:
    """Solve every orbit's orthogonality system and classify sampled real solutions.

    The linear part is reduced by hand; the remaining quadratic system in the
    three coefficients is solved with sympy.
    """
    import sympy

    al, be, ga = sympy.symbols("alpha beta gamma", real=True)
    monos = [al**2 + be**2 + ga**2, al * be, al * ga, be * ga]
    ident = Perm.identity(4)
    out = []
    for q, r in triple_orbits():
        cons = three_perm_constraints(q, r)
        eqs = [sum(sympy.Rational(c.numerator, c.denominator) * m for c, m in zip(row[:4], monos))
               - sympy.Rational(row[4].numerator, row[4].denominator) for row in cons]
        sols = sympy.solve(eqs, [al, be, ga], dict=True)
        tags: dict[str, int] = {}
        n_samples = 0
        witnesses = []
        for sol in sols:
            exprs = [sol.get(s, s) for s in (al, be, ga)]
            free = sorted(set().union(*(sympy.sympify(e).free_symbols for e in exprs)), key=str)
            grid = itertools.product(_SAMPLE_VALUES, repeat=len(free)) if samples else [()]
            if not samples and free:
                grid = [tuple(Fraction(1, 3) for _ in free)]
            for vals in grid:
                sub = {s: sympy.Rational(v.numerator, v.denominator) for s, v in zip(free, vals)}
                nums = [sympy.nsimplify(sympy.sympify(e).subs(sub)) for e in exprs]
                if any(not n.is_real for n in nums):
                    continue
                if all(n.is_rational for n in nums):
                    coeffs = [Fraction(int(n.p), int(n.q)) for n in nums]
                    tol = None
                else:
                    coeffs = [float(n) for n in nums]
                    tol = DEFAULT_TOL
                cls = three_perm_classify(ident, q, r, *coeffs, tol=tol)
                n_samples += 1
                tags[cls.tag] = tags.get(cls.tag, 0) + 1
                if cls.tag != PERMUTATIVE and len(witnesses) < 2:
                    witnesses.append({"coeffs": [_js(c) for c in coeffs], "classification": cls.to_json()})
        out.append({
            "triple": ["id", str(q), str(r)],
            "constraints": [[str(v) for v in row] for row in cons],
            "solution_branches": len(sols),
            "samples": n_samples,
            "tags": dict(sorted(tags.items())),
            "witnesses": witnesses,
        })
    return out


# sampling orthogonal points of covered subspace sums ----------------------------------------


@dataclass(frozen=True)
class Generator:
    """A recipe ``P_left (source point) P_right`` for exact orthogonal matrices in the span."""

    source: str  # "family", "cset", "opm3"
    name: str
    left: Perm
    right: Perm
    extra: int = 1  # branch / sign

    def build(self, t: Fraction) -> Mat:
        if self.source == "family":
            fid = next(f for f in all_family_ids() if str(f) == self.name)
            base = family_element(fid, family_point(fid, t, self.extra))
        elif self.source == "cset":
            base = c_set_rational(self.name, t)
        elif self.source == "opm3":
            x, y = _opm3_point(self.name, t)
            base = direct_sum(scalar_block(Fraction(self.extra)), opm3_element(self.name, x, y))
        else:
            raise ValueError(self.source)
        return base.permute(self.left, self.right)


def _opm3_point(which: str, t: Fraction) -> tuple[Fraction, Fraction]:
    """Rational point on an order-3 conic, on the line through (s, 0) with slope t."""
    s = 1 if which in ("X1bar", "Z1bar") else -1
    # with x = s + u, y = t u the conic reduces to u^2 (1 + t + t^2) + s u = 0
    u = -s / (1 + t + t * t)
    return s + u, t * u


def _recipes() -> list[Generator]:
    perms = all_perms(4)
    out = []
    for fid in all_family_ids():
        for branch in (1, -1):
            out += [Generator("family", str(fid), x, y, branch) for x in perms for y in perms]
    for which in ("C1", "C2"):
        out += [Generator("cset", which, x, y) for x in perms for y in perms]
    for which, sign in (("X1bar", 1), ("Z1bar", 1), ("Y-1bar", -1), ("W-1bar", -1)):
        out += [Generator("opm3", which, x, y, sign) for x in perms for y in perms]
    return out


@lru_cache(maxsize=None)
def _perm_coords() -> dict[Perm, tuple[float, ...]]:
    """Basis coordinates of every permutation matrix, as floats."""
    from .span import _basis_left_inverse

    linv = _basis_left_inverse()
    return {
        p: tuple(sum(float(r[i * 4 + p.image[i] - 1]) for i in range(4)) for r in linv)
        for p in all_perms(4)
    }


@lru_cache(maxsize=None)
def covered_recipes() -> tuple[Generator, ...]:
    """Recipes whose generic members lie in a subspace sum covered by some theorem.

    Screened with floats at one generic parameter; each sample is re-checked exactly.
    """
    from .span import basis_B, block_of

    blocks = [block_of(p) for p in basis_B()]
    coords = _perm_coords()
    probe = Fraction(3, 7)
    base_cache: dict[tuple, list] = {}
    out = []
    for g in _recipes():
        key = (g.source, g.name, g.extra)
        if key not in base_cache:
            ident = Perm.identity(4)
            base = Generator(g.source, g.name, ident, ident, g.extra).build(probe)
            comb = in_perm_span(base)
            base_cache[key] = [(p, float(c)) for p, c in comb.terms]
        acc = [0.0] * 10
        for p, c in base_cache[key]:
            q = g.left * p * g.right
            for k, v in enumerate(coords[q]):
                acc[k] += c * v
        mem = frozenset(blocks[k] for k in range(10) if abs(acc[k]) > 1e-9)
        if theorem_gate(mem).covered:
            out.append(g)
    return tuple(out)


def sporadic_pool() -> list[Mat]:
    from .families import sporadic_opm

    return [sporadic_opm(t, s, k) for t in all_perms(4) for s in (1, -1) for k in ("plain", "half-J")]


def sample_covered(n: int, seed: int = 0):
    """Yield ``n`` pairs (exact orthogonal matrix, membership) from covered subspace sums.

    Draws a covered recipe and a random rational parameter; every eighth draw is a
    sporadic OPM (signed permutation or J/2 - P).  Points whose exact membership
    leaves the covered sums (special parameters) are redrawn.
    """
    rng = random.Random(seed)
    recipes = covered_recipes()
    sporadic = [m for m in sporadic_pool() if theorem_gate(subspace_membership(m)).covered]
    made = 0
    while made < n:
        if rng.randrange(8) == 0:
            m = rng.choice(sporadic)
        else:
            g = rng.choice(recipes)
            num = 0
            while num == 0:
                num = rng.randint(-40, 40)
            try:
                m = g.build(Fraction(num, rng.randint(1, 40)))
            except (ValueError, ZeroDivisionError):
                continue
        mem = subspace_membership(m)
        if not theorem_gate(mem).covered:
            continue
        made += 1
        yield m, mem
