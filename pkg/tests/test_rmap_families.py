import pytest

from cremona_f2.rmap import RationalFunction1V, fibration, preserves_fibration
from cremona_f2.rmap_families import (
    common_tangents,
    double_section_check,
    excluded_point_check,
    family_generic_crosscheck,
    family_involution_check,
    family_map,
    family_samples,
    fiber_product_check,
    pencil_restriction_is_square,
    unique_tangent_check,
    verify_conic_identity,
)

TAGS = ("L2star", "L4star")


@pytest.mark.parametrize("tag", TAGS)
def test_parametrization_lies_on_the_conic(tag):
    assert verify_conic_identity(tag)
    assert excluded_point_check(tag)


def test_family_samples():
    samples = family_samples()
    assert len(samples) == 20
    assert len(set(samples)) == 20


@pytest.mark.parametrize("tag", TAGS)
def test_family_members_are_involutions(tag):
    for a in family_samples():
        assert family_involution_check(tag, a), repr(a)


@pytest.mark.parametrize(("tag", "pencil"), [("L2star", "pi2"), ("L4star", "pi4")])
def test_family_members_preserve_their_pencil(tag, pencil):
    f = family_map(tag, RationalFunction1V(0b101, 0b10))
    assert f.is_well_formed()
    assert preserves_fibration(f, fibration(pencil))


@pytest.mark.slow
@pytest.mark.parametrize("tag", TAGS)
def test_generic_composition_agrees(tag):
    assert family_generic_crosscheck(tag)


def test_unknown_family():
    with pytest.raises(ValueError):
        verify_conic_identity("L3star")


@pytest.mark.parametrize("pencil", ["pi2", "pi4"])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_x_equals_zero_is_the_only_common_tangent(pencil, k):
    assert unique_tangent_check(pencil, k)


def test_common_tangents_over_f2():
    assert common_tangents("pi4", 1) == [(1, 0, 0)]
    with pytest.raises(ValueError):
        unique_tangent_check("pi4", 9)


def test_restriction_to_the_tangent_is_a_square():
    assert pencil_restriction_is_square("pi2")
    assert pencil_restriction_is_square("pi4")


def test_double_section():
    assert double_section_check() == {"X4": True, "X2": True}


@pytest.mark.parametrize("which", ["4", "2"])
def test_fiber_product_inverse(which):
    assert fiber_product_check(which) == {"forward": True, "backward": True}
