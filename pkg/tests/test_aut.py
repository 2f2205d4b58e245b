import pytest

from cremona_f2.aut import (
    ALPHA4,
    GENERATOR_A,
    GENERATOR_B,
    GROUP_ORDERS,
    alpha4_powers,
    aut_d5_model,
    aut_d6_model,
    aut_q,
    aut_q_matrices,
    aut_q_on_p1xp1,
    automorphisms_for,
    closure,
    d5_power_ratmap,
    form_preserved_symbolically,
    group_orders,
    identity_matrix,
    involutions,
    j4_linear_part,
    make_linear,
    mat_mul_gf2,
    pgl2_f2,
    pgl2_involutions,
    pgl3_f2,
    pgl3_two_generator_relations,
)
from cremona_f2.frob import FrobTag, apply, frob_model
from cremona_f2.geom import normalize_ints, point
from cremona_f2.rmap import identity, maps_equal_rational


def test_pgl3():
    group = pgl3_f2()
    assert group.order == 168
    matrices = [g.entries for g in group.elements]
    assert len(set(matrices)) == 168
    assert len(involutions(matrices)) == 21


def test_pgl3_is_generated_by_two_matrices():
    assert len(closure([GENERATOR_A, GENERATOR_B])) == 168
    assert pgl3_two_generator_relations() == {"B2": True, "B3": True}


def test_pgl2():
    assert len(pgl2_f2()) == 6
    assert len(pgl2_involutions()) == 3


def test_linear_inverse(f4):
    g = make_linear([[1, 2, 0], [0, 1, 3], [2, 0, 1]], f4)
    assert g.compose(g.inverse()).entries == tuple(tuple(r) for r in identity_matrix(3))
    p = point(f4, 1, 3, 2)
    assert g.inverse().act(g.act(p)) == p


def test_alpha4_has_order_four():
    powers = alpha4_powers()
    assert powers[1] == ALPHA4
    assert identity_matrix(3) not in powers[1:]
    assert mat_mul_gf2(powers[3], ALPHA4) == identity_matrix(3)


def test_j4_linear_part_contains_alpha4():
    found = {g for g, _ in j4_linear_part()}
    assert ALPHA4 in found
    assert identity_matrix(3) in found


def test_aut_q():
    assert aut_q().order == 120
    for m in aut_q_matrices()[::17]:
        assert form_preserved_symbolically(m)


def test_aut_q_acts_on_p1xp1(f16):
    autos = aut_q_on_p1xp1(f16)
    assert autos.order == 120
    p = normalize_ints("P1xP1", (f16.x, 1, f16.power_of_x(3), 1), f16)
    images = {alpha.act(p) for alpha in autos.elements}
    assert p in images
    assert all(q.space == "P1xP1" for q in images)


def test_aut_d5_is_cyclic_of_order_five():
    assert aut_d5_model().order == 5
    assert maps_equal_rational(d5_power_ratmap(5), identity("P2"))
    assert not maps_equal_rational(d5_power_ratmap(1), identity("P2"))


def test_aut_d6_commutes_with_the_twist(f64):
    autos = aut_d6_model(f64)
    assert autos.order == 18
    model = frob_model(FrobTag.D6Twist)
    p = point(f64, f64.power_of_x(5), f64.power_of_x(11), 1)
    images = [alpha.act(p) for alpha in autos.elements]
    assert len(set(images)) == 18
    for alpha in autos.elements:
        assert alpha.act(apply(model, p)) == apply(model, alpha.act(p))


def test_automorphisms_for(f64):
    assert automorphisms_for("P2", f64).order == GROUP_ORDERS["P2"]
    assert automorphisms_for("D6", f64).order == GROUP_ORDERS["D6"]
    with pytest.raises(ValueError):
        automorphisms_for("P3", f64)


def test_group_orders():
    assert group_orders() == GROUP_ORDERS
