"""Tests for the equivalence relation between family instances."""

from fractions import Fraction

import pytest

from src.phinmod.catalog import FamilyId
from src.phinmod.equivalence import (
    CRIS26_RELATIONS,
    CROSS_FAMILY,
    apply_permutation,
    cross_family_permutations,
    orbit,
    param_equivalent,
    permutes_to,
)
from src.phinmod.families import CATALOG


def test_permutation_convention(field):
    """Test lambda_k = lambda'_{p_k}."""
    right = tuple(field.element(x) for x in (5, 7, 9))
    left = apply_permutation(right, (3, 1, 2))
    assert left == (9, 5, 7)
    assert permutes_to(left, right, (3, 1, 2))
    assert not permutes_to(right, right, (3, 1, 2))


def test_identical_instances(instance):
    """Test reflexivity."""
    fi = instance("Cris4", [2], [3])
    assert param_equivalent(fi, fi)


def test_different_parameters(instance):
    """Test that a different filtration parameter is not equivalent."""
    assert not param_equivalent(instance("Cris4", [2], [3]), instance("Cris4", [2], [4]))


def test_different_hodge_types(instance):
    """Test that Hodge types must agree."""
    assert not param_equivalent(instance("Cris4", [2], [3], r=1, s=2),
                                instance("Cris4", [2], [3], r=1, s=3))


def test_swap_within_family(instance):
    """Test Cris15, symmetric in lambda2 and lambda3."""
    a = instance("Cris15", [4, 3, 5])
    b = instance("Cris15", [4, 5, 3])
    assert param_equivalent(a, b)
    assert not param_equivalent(a, instance("Cris15", [3, 4, 5]))


def test_projective_parameters(instance):
    """Test that R1_2 parameters are compared as points of P^1."""
    a = instance("R1_2", [2], [1, 2], r=1, s=3)
    b = instance("R1_2", [2], [3, 6], r=1, s=3)
    c = instance("R1_2", [2], [1, 3], r=1, s=3)
    assert param_equivalent(a, b)
    assert not param_equivalent(a, c)


@pytest.mark.parametrize("perm,relation", CRIS26_RELATIONS)
def test_cris26_relations(instance, perm, relation):
    """Test the six Moebius relations of Cris26."""
    right = [5, 7, 9]
    left = [right[p - 1] for p in perm]
    L = Fraction(3)
    a = instance("Cris26", left, [L])
    b = instance("Cris26", right, [relation(a.fil_params[0])])
    assert param_equivalent(a, b)


def test_cris26_unrelated_parameter(instance):
    """Test that a permutation with the wrong parameter is not equivalent."""
    a = instance("Cris26", [7, 5, 9], [3])
    b = instance("Cris26", [5, 7, 9], [3])
    assert not param_equivalent(a, b)


def test_cross_family_table_size():
    """Test the cross-family relation table."""
    assert len(CROSS_FAMILY) == 15
    assert sorted(cross_family_permutations(FamilyId.CRIS17, FamilyId.CRIS19)) == [(2, 3, 1), (3, 2, 1)]


@pytest.mark.parametrize("left,right,perm", CROSS_FAMILY,
                         ids=lambda x: x.value if isinstance(x, FamilyId) else str(x))
def test_cross_family_relations(instance, left, right, perm):
    """Test each cross-family relation in both directions."""
    lam = [5, 7, 9]
    a = instance(left.value, apply_permutation(tuple(map(Fraction, lam)), perm))
    b = instance(right.value, lam)
    assert param_equivalent(a, b)
    assert param_equivalent(b, a)


def test_cross_family_needs_matching_permutation(instance):
    """Test that Cris17 and Cris19 with unrelated eigenvalues are not equivalent."""
    a = instance("Cris17", [5, 7, 9])
    b = instance("Cris19", [5, 7, 9])
    assert not param_equivalent(a, b)


def test_swap_composed_with_cross_family(instance):
    """Test Cris18 ~ Cris20 needing an in-family swap before the table permutation."""
    a = instance("Cris18", [2, 6, 10])
    b = instance("Cris20", [10, 6, 2])
    assert param_equivalent(a, b)
    assert param_equivalent(b, a)
    assert param_equivalent(a, instance("Cris22", [6, 10, 2]))


SWAPPED_CROSS_FAMILY = [
    (left, right, perm, swap)
    for left, right, perm in CROSS_FAMILY
    for swap in CATALOG.get(left).swaps
]


@pytest.mark.parametrize("left,right,perm,swap", SWAPPED_CROSS_FAMILY,
                         ids=lambda x: x.value if isinstance(x, FamilyId) else str(x))
def test_cross_family_after_swap(instance, left, right, perm, swap):
    """Test each cross-family relation composed with the left family's swap."""
    lam = tuple(map(Fraction, [2, 6, 10]))
    a = instance(left.value, apply_permutation(apply_permutation(lam, perm), swap))
    b = instance(right.value, lam)
    assert param_equivalent(a, b)
    assert param_equivalent(b, a)


@pytest.mark.parametrize("family,fil", [("Cris17", []), ("Cris18", []), ("Cris23", []), ("Cris26", [3])])
def test_orbit_size(instance, family, fil):
    """Test that each configuration has six placements up to equivalence."""
    found = orbit(instance(family, [5, 7, 9], fil))
    assert len(found) == 6
    assert all(param_equivalent(found[0], other) for other in found)


def test_orbit_stays_in_group(instance):
    """Test that the orbit of Cris17 only reaches Cris17, Cris19 and Cris21."""
    families = {fi.id for fi in orbit(instance("Cris17", [5, 7, 9]))}
    assert families == {FamilyId.CRIS17, FamilyId.CRIS19, FamilyId.CRIS21}
