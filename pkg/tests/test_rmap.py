import pytest

from cremona_f2.errors import IndeterminatePoint, SpaceMismatch, ZeroFunction
from cremona_f2.frob import FrobTag, frob_model
from cremona_f2.geom import point
from cremona_f2.poly import MPoly
from cremona_f2.rmap import (
    RatMap,
    RationalFunction1V,
    compose_all,
    commutes_with_frob,
    fibration,
    identity,
    is_involution,
    jonquieres_gp,
    linear_map,
    map_compose,
    maps_equal_rational,
    preserves_fibration,
    semi_preserves,
)
from cremona_f2.rmap_builtins import alpha2, standard_quadratic


def test_standard_quadratic_is_an_involution():
    sigma = standard_quadratic()
    assert sigma.is_well_formed()
    assert is_involution(sigma)
    assert not maps_equal_rational(sigma, identity("P2"))


def test_evaluation_and_base_locus(f4):
    sigma = standard_quadratic()
    assert sigma(point(f4, 1, 2, 3)) == point(f4, f4.mul(2, 3), 3, 2)
    with pytest.raises(IndeterminatePoint):
        sigma(point(f4, 1, 0, 0))


def test_rational_equality_ignores_common_factors(f2):
    x, y, z = MPoly.gens(f2, 3)
    plain = RatMap("P2", "P2", [x, y, z])
    scaled = RatMap("P2", "P2", [x * (y + z), y * (y + z), z * (y + z)])
    assert maps_equal_rational(plain, scaled)


def test_component_count_must_match_target(f2):
    x, y, _ = MPoly.gens(f2, 3)
    with pytest.raises(SpaceMismatch):
        RatMap("P2", "P2", [x, y])
    with pytest.raises(SpaceMismatch):
        map_compose(standard_quadratic(), RatMap("P2", "P1", [x, y]))


def test_linear_maps_compose_like_matrices(f4):
    a = linear_map(f4, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    b = linear_map(f4, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    ab = linear_map(f4, [[1, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert maps_equal_rational(compose_all(a, b), ab)


def test_gf2_maps_commute_with_frobenius():
    assert commutes_with_frob(standard_quadratic(), frob_model(FrobTag.StdP2))
    assert commutes_with_frob(identity("P2"), frob_model(FrobTag.D6Twist))


def test_maps_with_non_rational_coefficients_do_not_commute(f4):
    m = linear_map(f4, [[1, 0, 0], [0, f4.x, 0], [0, 0, 1]])
    assert not commutes_with_frob(m, frob_model(FrobTag.StdP2))


def test_jonquieres_maps_preserve_lines_through_a_point():
    t = RationalFunction1V.t()
    g = jonquieres_gp(t + RationalFunction1V.const(1))
    assert g.is_well_formed()
    assert preserves_fibration(g, fibration("pi1"))
    with pytest.raises(ZeroFunction):
        jonquieres_gp(RationalFunction1V(0))


def test_alpha2_swaps_the_pi2_fibers():
    assert semi_preserves(alpha2(), fibration("pi2"), [[1, 0], [1, 1]])
    assert not preserves_fibration(alpha2(), fibration("pi2"))


def test_rational_functions():
    t = RationalFunction1V.t()
    one = RationalFunction1V.const(1)
    assert (t + t).is_zero()
    assert t * t.inverse() == one
    assert (t / (t + one)).degree() == 1
    assert RationalFunction1V(0b110, 0b10) == t + one
    with pytest.raises(ZeroFunction):
        RationalFunction1V(0).inverse()


def test_unknown_fibration():
    with pytest.raises(ValueError):
        fibration("pi3")
