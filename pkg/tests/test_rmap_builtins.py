import pytest

from cremona_f2.errors import UnknownName
from cremona_f2.frob import FrobTag
from cremona_f2.geom import normalize_ints
from cremona_f2.poly import MPoly
from cremona_f2.rmap import fibration, is_involution, maps_equal_rational, preserves_fibration, semi_preserves
from cremona_f2.rmap_builtins import (
    ONE_LINK22_BASE_ACTION,
    build_phi_d5,
    builtin,
    builtin_names,
    closed_form_iterate,
    d5_pointwise_check,
    d6_chain_check,
    one_link_composition_check,
    one_link_conjugation,
    q_chain_check,
    q_form,
    q_point_to_p1xp1,
    segre,
    twist_iterate_matches,
)


def test_registry_is_complete():
    names = builtin_names()
    assert len(names) == 24
    assert len(set(names)) == 24
    with pytest.raises(UnknownName):
        builtin("no_such_map")


@pytest.mark.parametrize("name", builtin_names())
def test_builtins_are_homogeneous(name):
    f = builtin(name)
    assert f.name == name
    assert f.is_well_formed()


def test_rho_q_lands_on_the_quadric():
    rho = builtin("rho_Q")
    assert q_form().compose(list(rho.components)).is_zero()


def test_segre_image_is_the_split_quadric(f2):
    x0, x1, x2, x3 = MPoly.gens(f2, 4)
    relation = x0 * x3 + x1 * x2
    assert relation.compose(list(segre().components)).is_zero()


@pytest.mark.parametrize("name", ["oneLink_p100", "oneLink22_p100"])
def test_one_link_involutions(name):
    assert is_involution(builtin(name))


def test_one_link_preserves_its_pencil():
    assert preserves_fibration(builtin("oneLink_p100"), fibration("pi4"))


@pytest.mark.parametrize("name", ["oneLink22_p100", "oneLink22_p101"])
def test_j2_links_move_fibres_by_the_base_involution(name):
    f = builtin(name)
    assert semi_preserves(f, fibration("pi2"), ONE_LINK22_BASE_ACTION)
    assert not preserves_fibration(f, fibration("pi2"))


def test_one_link_is_a_conjugate_of_the_standard_quadratic():
    result = one_link_conjugation()
    assert result["conjugate"]
    assert result["vanishes"]
    assert result["base_points"] == ["[1:0:0]", "[1:1:a]", "[1:1:a^2]"]
    assert one_link_composition_check()


def test_model_chains():
    assert q_chain_check()
    assert d6_chain_check()


@pytest.mark.parametrize(
    ("tag", "k"),
    [(FrobTag.StdP2, 2), (FrobTag.QTwist, 1), (FrobTag.QTwist, 2), (FrobTag.D6Twist, 2), (FrobTag.D5Twist, 1)],
)
def test_twist_iterates_have_closed_forms(tag, k):
    assert twist_iterate_matches(tag, k)


def test_unknown_closed_form():
    with pytest.raises(ValueError):
        closed_form_iterate(FrobTag.D6Twist, 9)


def test_q_points_move_to_p1xp1(f4):
    phi = builtin("phi_Q")
    for u in range(1, 4):
        for v in range(4):
            p = phi(normalize_ints("P1xP1", (u, 1, v, 1), f4))
            back = q_point_to_p1xp1(p)
            assert phi(back) == p


@pytest.mark.slow
def test_phi_d5_conjugates_frobenius():
    phi = build_phi_d5()
    assert phi.is_well_formed()
    assert d5_pointwise_check(20)
    assert maps_equal_rational(phi, build_phi_d5())
