import itertools

import pytest
from hypothesis import given

from conftest import perms
from opm4.matrix import Mat, to_matrix
from opm4.perm import (
    Perm,
    all_perms,
    class_of,
    compose,
    cyc,
    fixing_one,
    format_cycles,
    h_orthogonal,
    inverse,
    parse_cycles,
    s4_partition,
)


@pytest.mark.parametrize(
    "text, image",
    [
        ("id", (1, 2, 3, 4)),
        ("()", (1, 2, 3, 4)),
        ("(12)", (2, 1, 3, 4)),
        ("(123)", (2, 3, 1, 4)),
        ("(1324)", (3, 4, 2, 1)),
        ("(12)(34)", (2, 1, 4, 3)),
    ],
)
def test_parse_known(text, image):
    assert parse_cycles(text).image == image


@pytest.mark.parametrize("bad", ["(11)", "(15)", "(12)(23)", "12", "(1a)"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_cycles(bad)


@given(perms)
def test_format_roundtrip(p):
    assert parse_cycles(format_cycles(p)) == p
    assert cyc(str(p)) == p


@given(perms, perms)
def test_compose_matches_matrix_product(p, q):
    assert to_matrix(compose(p, q)) == to_matrix(p) @ to_matrix(q)


@given(perms)
def test_inverse(p):
    assert compose(p, inverse(p)) == Perm.identity()
    assert to_matrix(inverse(p)) == to_matrix(p).T


def test_compose_convention_example():
    # apply (34) then (13)(24)
    assert compose(cyc("(34)"), cyc("(13)(24)")) == cyc("(1324)")


def test_counts():
    assert len(all_perms(4)) == 24
    assert len(set(all_perms(4))) == 24
    assert len(fixing_one(4)) == 6
    assert all(p(1) == 1 for p in fixing_one(4))


@given(perms, perms)
def test_h_orthogonal_is_symmetric_and_means_no_fixed_agreement(p, q):
    assert h_orthogonal(p, q) == h_orthogonal(q, p)
    disjoint = all(p(i) != q(i) for i in range(1, 5))
    assert h_orthogonal(p, q) == (p != q and disjoint)


def test_partition_structure():
    classes = s4_partition()
    assert len(classes) == 6
    members = [m for c in classes for m in c.members]
    assert len(members) == 24 and set(members) == set(all_perms(4))
    ones = Mat.ones(4)
    for c in classes:
        for a, b in itertools.combinations(c.members, 2):
            assert h_orthogonal(a, b)
        total = to_matrix(c.members[0])
        for m in c.members[1:]:
            total = total + to_matrix(m)
        assert total == ones


@given(perms)
def test_class_of(p):
    assert p in class_of(p).members
