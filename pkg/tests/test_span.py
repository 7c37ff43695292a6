import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import family_ids, nonzero_rationals, perms, prefixes, small_rationals
from opm4.families import FamilyId, family_element, family_point, grover
from opm4.matrix import Mat, constant_line_sum, is_orthogonal, is_permutative, row_col_sums, to_matrix
from opm4.perm import all_perms, cyc, s4_partition
from opm4.span import (
    NotInSpan,
    PermLinComb,
    add_perm_preserves_opm,
    basis_B,
    basis_blocks,
    four_perm_witnesses,
    gram_monomial_system,
    h_orthogonal_quadruples,
    h_orthogonal_support,
    in_perm_span,
    opm_as_four_perms,
    quadruple,
    split_six_permutative,
    subspace_membership,
    two_perm_orthogonality_scan,
    variety_residuals,
)
from opm4.verify import conclusion_matrix

combinations = st.dictionaries(perms, small_rationals, max_size=24).map(PermLinComb.from_map)


def test_basis_rank_by_sympy():
    vecs = [[int(v) for v in to_matrix(p).entries()] for p in basis_B()]
    assert sympy.Matrix(vecs).rank() == 10
    every = [[int(v) for v in to_matrix(p).entries()] for p in all_perms(4)]
    assert sympy.Matrix(every).rank() == 10


def test_blocks_partition_basis():
    blocks = basis_blocks()
    assert sorted(len(b) for b in blocks.values()) == [1, 1, 2, 2, 4]
    assert sorted(p for b in blocks.values() for p in b) == sorted(basis_B())


@given(combinations)
def test_span_roundtrip(c):
    a = c.evaluate(0)
    coords = in_perm_span(a)
    assert coords is not None
    assert coords.evaluate(0) == a
    assert set(coords.support) <= set(basis_B())


@given(combinations)
def test_line_sums_equal_coefficient_sum(c):
    a = c.evaluate(0)
    rows, cols = row_col_sums(a)
    assert set(rows + cols) <= {c.coefficient_sum()}


def test_outside_span():
    a = Mat.exact([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    assert in_perm_span(a) is None
    with pytest.raises(NotInSpan):
        subspace_membership(a)


def test_float_input_snaps_or_falls_back():
    a = grover().to_approx()
    assert in_perm_span(a).is_exact
    r = 2 ** 0.5 / 3
    b = Mat.approx([[r, 2 / 3, -r, 1 / 3], [2 / 3, -r, 1 / 3, r], [-r, 1 / 3, r, 2 / 3], [1 / 3, r, 2 / 3, -r]])
    snapped = in_perm_span(b)
    assert snapped.is_exact and snapped.evaluate(1e-10).close(b, 1e-9)
    coords = in_perm_span(b, snap=False)
    assert coords is not None and not coords.is_exact
    assert coords.evaluate(1e-10).close(b, 1e-9)


def test_json_roundtrip():
    c = PermLinComb.from_map({cyc("(12)"): Fraction(1, 3), cyc("(234)"): Fraction(-2, 7)})
    assert PermLinComb.from_json(c.to_json()) == c


def test_zero_coefficients_rejected():
    with pytest.raises(ValueError):
        PermLinComb(((cyc("(12)"), 0),))


@pytest.mark.parametrize(
    "cycles, membership",
    [(("(12)",), {1}), (("(24)", "(23)"), {2, 5}), (("(132)",), None)],
)
def test_membership_of_single_terms(cycles, membership):
    a = to_matrix(cyc(cycles[0]))
    for c in cycles[1:]:
        a = a + to_matrix(cyc(c))
    got = subspace_membership(a)
    if membership is not None:
        assert got == membership
    else:
        assert got  # a permutation outside the basis mixes several blocks


def test_grover_four_perm_form():
    form = opm_as_four_perms(grover())
    h = Fraction(1, 2)
    assert form.quadruple == quadruple("X")
    assert form.coeffs == (-h, h, h, h)
    assert form.reconstruct() == grover()


@given(family_ids, nonzero_rationals, st.sampled_from((1, -1)), prefixes)
def test_four_perm_forms_lie_on_varieties(fid, r, branch, pbar):
    m = family_element(fid, family_point(fid, r, branch), pbar)
    forms = four_perm_witnesses(m)
    assert forms
    for f in forms:
        assert f.reconstruct() == m
        assert variety_residuals(f.witness.fid.letter, f.coeffs) == (0, 0, 0)


@given(combinations)
def test_split_six_parts_are_permutative_and_sum_to_input(c):
    parts = split_six_permutative(c)
    total = Mat.zeros(4)
    for cls, m in parts:
        assert is_permutative(m)
        total = total + m
    assert total == c.evaluate(0)
    assert len({cls.index for cls, _ in parts}) == len(parts) <= 6


def test_h_orthogonal_quadruples():
    quads = h_orthogonal_quadruples()
    assert len(quads) == 24
    assert all(frozenset(c.members) in {frozenset(q) for q in quads} for c in s4_partition())


def test_two_perm_scan():
    results = two_perm_orthogonality_scan()
    assert len(results) == 276
    assert {r.overlap for r in results} == {0, 1, 2}
    for r in results:
        assert r.monomials == (1, 0)
        assert set(r.solutions) == {(1, 0), (-1, 0), (0, 1), (0, -1)}


@pytest.mark.parametrize("p, q", [("id", "(12)"), ("(12)", "(34)"), ("(1234)", "(13)(24)"), ("(123)", "(243)")])
def test_two_perm_solutions_by_sympy(p, q):
    a, b = sympy.symbols("a b", real=True)
    m = a * sympy.Matrix(to_matrix(cyc(p)).rows) + b * sympy.Matrix(to_matrix(cyc(q)).rows)
    eqs = set(sympy.expand(e) for e in (m.T * m - sympy.eye(4))) - {0}
    sols = sympy.solve(list(eqs), [a, b], dict=True)
    assert {(int(s[a]), int(s[b])) for s in sols} == {(1, 0), (-1, 0), (0, 1), (0, -1)}


def test_gram_system_shape():
    rows, rhs, pairs = gram_monomial_system((cyc("id"), cyc("(12)"), cyc("(34)")))
    assert len(rows) == 16 and len(rhs) == 16
    assert pairs == [(0, 1), (0, 2), (1, 2)]


@given(nonzero_rationals, st.sampled_from(all_perms(4)), small_rationals)
def test_adding_a_permutation(r, p, c):
    a = family_element(FamilyId("X", 1), family_point(FamilyId("X", 1), r))
    assert h_orthogonal_support(a) is not None
    res = add_perm_preserves_opm(a, c, p)
    if res.orthogonal:
        assert res.permutative
        assert is_permutative(res.matrix)
    assert res.matrix == a + to_matrix(p) * c


def test_adding_a_permutation_rejects_general_input():
    with pytest.raises(ValueError):
        add_perm_preserves_opm(conclusion_matrix(), 1, cyc("(12)"))
