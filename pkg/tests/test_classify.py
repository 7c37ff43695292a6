import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import family_ids, nonzero_rationals, perms, prefixes
from opm4.classify import (
    DIRECT_SUM,
    HADAMARD_BLOCK,
    IRREDUCIBLE,
    NOT_IN_SPAN,
    NOT_ORTHOGONAL,
    PERMUTATIVE,
    STRUCTURAL_TAGS,
    NotOrthogonal,
    classify_orthogonal,
    direct_sum_catalog,
    hadamard_block_search,
    sample_covered,
    theorem_gate,
    three_perm_classify,
    three_perm_scan,
    triple_orbits,
)
from opm4.families import c_set_element, c_set_rational, family_element, family_point, grover, sporadic_opm
from opm4.matrix import Mat, is_orthogonal, is_permutative, to_matrix
from opm4.perm import Perm, all_perms, cyc
from opm4.span import PermLinComb, subspace_membership
from opm4.verify import conclusion_matrix

THIRD = Fraction(1, 3)

# -2/3 P(12)(34) - 2/3 P(123) + 1/3 P(124): orthogonal, in blocks 2, 3, 4, not permutative
BLOCKS_234_EXAMPLE = PermLinComb.from_map(
    {cyc("(12)(34)"): -2 * THIRD, cyc("(123)"): -2 * THIRD, cyc("(124)"): THIRD}
)


def opening_example():
    return PermLinComb.from_map({Perm.identity(): -THIRD, cyc("(234)"): 2 * THIRD, cyc("(243)"): 2 * THIRD}).evaluate(0)


def test_conclusion_matrix_is_irreducible():
    res = classify_orthogonal(conclusion_matrix())
    assert res.tag == IRREDUCIBLE
    assert res.membership == {1, 2, 5}
    assert direct_sum_catalog(conclusion_matrix()) is None
    assert hadamard_block_search(conclusion_matrix()) is None


def test_grover_is_permutative():
    res = classify_orthogonal(grover())
    assert res.tag == PERMUTATIVE
    assert res.witness.fid.letter == "X" and res.witness.fid.j == 1
    assert res.reconstruct() == grover()


def test_not_orthogonal_and_not_in_span():
    assert classify_orthogonal(Mat.ones(4)).tag == NOT_ORTHOGONAL
    c, s = Fraction(3, 5), Fraction(4, 5)
    rot = Mat.exact([[c, -s, 0, 0], [s, c, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert classify_orthogonal(rot).tag == NOT_IN_SPAN


@pytest.mark.parametrize(
    "matrix, sign, which",
    [(opening_example, 1, "X1bar"), (lambda: -Mat.identity(), -1, "Y-1bar")],
    ids=["opening-example", "minus-identity"],
)
def test_direct_sum_catalog(matrix, sign, which):
    m = matrix()
    w = direct_sum_catalog(m)
    assert w is not None and w.form.sizes == (1, 3)
    assert w.blocks[0].matrix[0, 0] == sign
    assert w.blocks[1].opm3[0] == which
    assert w.reconstruct() == m


def test_opening_example_tag():
    res = classify_orthogonal(opening_example())
    assert res.tag == DIRECT_SUM


def test_transposition_is_flagged():
    w = direct_sum_catalog(to_matrix(cyc("(12)")))
    assert w.signed_permutation is not None
    assert w.signed_permutation.perm == cyc("(12)")


@pytest.mark.parametrize("which", ["C1", "C2"])
@pytest.mark.parametrize("t", [Fraction(1, 2), Fraction(-3, 7), Fraction(5)])
def test_c_sets_have_hadamard_blocks(which, t):
    m = c_set_rational(which, t)
    res = classify_orthogonal(m)
    assert res.tag in (HADAMARD_BLOCK, PERMUTATIVE, DIRECT_SUM)
    if res.tag == HADAMARD_BLOCK:
        assert res.witness.cbar is not None and res.witness.cbar[0] == which
        assert res.reconstruct() == m


def test_c1_at_zero_is_grover_like():
    m = c_set_element("C1", Fraction(0))
    assert is_permutative(m)
    assert classify_orthogonal(m).tag == PERMUTATIVE


def test_float_c_set_member():
    m = c_set_element("C2", 0.3, 1, 1e-12)
    res = classify_orthogonal(m, snap=False)
    assert res.tag == HADAMARD_BLOCK
    assert res.reconstruct().close(m, 1e-9)


@settings(max_examples=15)
@given(family_ids, nonzero_rationals, prefixes, perms, perms)
def test_tag_is_invariant_under_permutation_equivalence(fid, r, pbar, x, y):
    m = family_element(fid, family_point(fid, r), pbar)
    assert classify_orthogonal(m.permute(x, y)).tag == PERMUTATIVE


@settings(max_examples=10)
@given(perms, perms, st.sampled_from([opening_example, conclusion_matrix]))
def test_equivariance_of_nonpermutative_tags(x, y, make):
    m = make()
    assert classify_orthogonal(m.permute(x, y)).tag == classify_orthogonal(m).tag
    assert classify_orthogonal(m.T).tag == classify_orthogonal(m).tag


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_sampled_witnesses_reconstruct(seed):
    for m, mem in sample_covered(3, seed):
        assert m.is_exact and is_orthogonal(m)
        assert subspace_membership(m) == mem
        res = classify_orthogonal(m)
        assert res.tag in STRUCTURAL_TAGS
        if res.tag != IRREDUCIBLE:
            assert res.reconstruct() == m


# gates ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "membership, permitted",
    [
        ({1, 2}, {PERMUTATIVE}),
        ({3, 5}, {PERMUTATIVE}),
        ({1, 2, 3}, {PERMUTATIVE}),
        ({2, 3, 4, 5}, {PERMUTATIVE}),
        ({3, 4, 5}, {PERMUTATIVE}),
        ({1, 3, 4}, {PERMUTATIVE, DIRECT_SUM, HADAMARD_BLOCK}),
        ({1, 2, 5}, set(STRUCTURAL_TAGS)),
        ({1, 2, 3, 4, 5}, set(STRUCTURAL_TAGS)),
    ],
)
def test_gate_table(membership, permitted):
    assert theorem_gate(membership).permitted == permitted


@pytest.mark.parametrize("membership", [{1, 2, 5}, {1, 3, 4, 5}])
def test_uncovered_sums(membership):
    assert not theorem_gate(membership).covered


def test_gate_agrees_with_classification_on_fixed_examples():
    for m in (grover(), opening_example(), c_set_rational("C1", Fraction(2)), conclusion_matrix()):
        assert classify_orthogonal(m).tag in theorem_gate(m).permitted


def test_blocks_234_admit_a_nonpermutative_orthogonal_matrix():
    """The gate forbids it, so a gate check on this sum must report a violation."""
    m = BLOCKS_234_EXAMPLE.evaluate(0)
    assert is_orthogonal(m) and not is_permutative(m)
    assert subspace_membership(m) == {2, 3, 4}
    res = classify_orthogonal(m)
    assert res.tag == DIRECT_SUM
    assert res.tag not in theorem_gate(m).permitted
    # the other matrix convention sends each P_p to P_{p^-1}: the same combination
    # of inverses is m.T, again orthogonal and not permutative
    inv = PermLinComb.from_map((p.inverse(), c) for p, c in BLOCKS_234_EXAMPLE.terms).evaluate(0)
    assert inv == m.T and is_orthogonal(inv) and not is_permutative(inv)


def test_blocks_234_by_sympy():
    """Solve orthogonality on blocks 2, 3, 4 symbolically and find a non-permutative branch."""
    syms = sympy.symbols("a0:5", real=True)
    basis = ["(24)", "(12)(34)", "(124)", "(234)", "(123)"]
    m = sum((s * sympy.Matrix(to_matrix(cyc(b)).rows) for s, b in zip(syms, basis)), sympy.zeros(4))
    eqs = [e for e in set(sympy.expand(x) for x in (m.T * m - sympy.eye(4))) if e != 0]
    sols = sympy.solve(eqs, syms, dict=True)
    found = False
    for sol in sols:
        vals = [sympy.sympify(sol.get(s, s)) for s in syms]
        free = set().union(*(v.free_symbols for v in vals))
        for t in (sympy.Rational(1, 5), sympy.Rational(-2, 7), sympy.Rational(1, 2)):
            point = [sympy.nsimplify(v.subs({f: t for f in free})) for v in vals]
            if all(x.is_real and x.is_finite for x in point):
                break
        else:
            continue
        a = sympy.Matrix(m.subs(dict(zip(syms, point))))
        assert sympy.simplify(a.T * a - sympy.eye(4)) == sympy.zeros(4)
        rows = [sorted(a.row(i), key=float) for i in range(4)]
        found |= any(r != rows[0] for r in rows)
    assert found


# three permutations ------------------------------------------------------------------


def test_triple_orbits_cover_all_triples():
    reps = {frozenset((Perm.identity(), q, r)) for q, r in triple_orbits()}
    assert len(triple_orbits()) == 19
    for trip in itertools.combinations(all_perms(4), 3):
        images = set()
        for a in trip:
            moved = [a.inverse() * b for b in trip]
            for s in all_perms(4):
                images.add(frozenset(s.inverse() * m * s for m in moved))
        assert images & reps


def test_three_perm_classify_examples():
    res = three_perm_classify(Perm.identity(), cyc("(234)"), cyc("(243)"), -THIRD, 2 * THIRD, 2 * THIRD)
    assert res.tag == DIRECT_SUM
    res = three_perm_classify(Perm.identity(), cyc("(12)"), cyc("(34)"), 0, -1, 0)
    assert res.tag == PERMUTATIVE
    with pytest.raises(NotOrthogonal):
        three_perm_classify(Perm.identity(), cyc("(12)"), cyc("(34)"), 1, 1, 1)
    with pytest.raises(ValueError):
        three_perm_classify(Perm.identity(), Perm.identity(), cyc("(34)"), 1, 0, 0)


def test_three_perm_scan_finds_no_irreducible():
    rows = three_perm_scan(samples=True)
    assert len(rows) == 19
    totals = {}
    for row in rows:
        for tag, k in row["tags"].items():
            totals[tag] = totals.get(tag, 0) + k
    assert IRREDUCIBLE not in totals
    assert totals == {PERMUTATIVE: 116, DIRECT_SUM: 32}


@pytest.mark.parametrize("index", [0, 7, 18])
def test_three_perm_branches_by_direct_sympy(index):
    """Solve the raw 16 entry equations for one orbit and compare branch sets."""
    q, r = triple_orbits()[index]
    a, b, c = sympy.symbols("alpha beta gamma", real=True)
    m = sum((s * sympy.Matrix(to_matrix(p).rows) for s, p in zip((a, b, c), (Perm.identity(), q, r))), sympy.zeros(4))
    eqs = [e for e in set(sympy.expand(x) for x in (m.T * m - sympy.eye(4))) if e != 0]
    direct = sympy.solve(eqs, [a, b, c], dict=True)
    scan = three_perm_scan(samples=False)[index]
    assert scan["solution_branches"] == len(direct)
