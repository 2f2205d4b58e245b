import pytest

from cremona_f2 import classify
from cremona_f2.aut import pgl3_f2
from cremona_f2.classify_workflow import classify_orbits
from cremona_f2.errors import MismatchReport, UnsupportedPair
from cremona_f2.ff import embed_with_min_poly, registry_field
from cremona_f2.frob import FrobTag, frob_model, orbit
from cremona_f2.geom import point
from cremona_f2.known_results import (
    INVENTORY_ROWS,
    INVENTORY_TABLE_TOTALS,
    SUPPORTED_PAIRS,
    class_count,
    published_representatives,
    published_stages,
)
from cremona_f2.state_classify import OrbitClass, Survivor

FAST_PAIRS = [("P2", 3), ("Q", 4), ("D6", 2), ("D6", 3)]
SLOW_PAIRS = [pair for pair in SUPPORTED_PAIRS if pair not in FAST_PAIRS]


def _assert_matches_published(surface, d):
    state = classify_orbits(surface, d)
    counts = state["counts"]
    assert counts.published_columns() == published_stages(surface, d)
    assert len(state["classes"]) == class_count(surface, d)
    assert state["match"].ok, state["match"]
    reps = [s["orbit"].points[0] for s in state["representatives"]]
    assert classify.dedup_is_sound(surface, reps)


@pytest.mark.parametrize(("surface", "d"), FAST_PAIRS)
def test_small_classifications_match_published_tables(surface, d):
    _assert_matches_published(surface, d)


@pytest.mark.slow
@pytest.mark.parametrize(("surface", "d"), SLOW_PAIRS)
def test_large_classifications_match_published_tables(surface, d):
    _assert_matches_published(surface, d)


def test_unsupported_pair():
    with pytest.raises(UnsupportedPair):
        classify.check_pair("P2", 5)
    with pytest.raises(UnsupportedPair):
        classify_orbits("Q", 5)


def test_point_keys_distinguish_fields(f4, f16):
    assert classify.point_key(point(f4, 1, 1, 0)) != classify.point_key(point(f16, 1, 1, 0))


def test_dedup_keeps_the_first_of_equivalent_orbits(f8):
    model = frob_model(FrobTag.StdP2)
    p = point(f8, 1, f8.x, f8.square(f8.x))
    g = pgl3_f2().elements[5]
    q = g.act(p)
    survivors = [Survivor(label="p", orbit=orbit(model, p)), Survivor(label="q", orbit=orbit(model, q))]
    kept = classify.dedup_by_automorphisms("P2", survivors)
    assert [s["label"] for s in kept] == ["p"]
    assert classify.orbits_equivalent("P2", q, p)


def test_one_per_orbit_only_for_twisted_models(f8):
    model = frob_model(FrobTag.StdP2)
    o = orbit(model, point(f8, 1, f8.x, 0))
    same = [Survivor(label="a", orbit=o), Survivor(label="b", orbit=orbit(model, o.points[1]))]
    assert len(classify.one_per_orbit("P2", same)) == 2
    assert len(classify.one_per_orbit("D6", same)) == 1


def test_boundary_points_enter_the_d6_position_check(f64):
    # [1:1:0]은 [1:0:0], [0:1:0]과 공선
    assert classify.general_position_on_surface("P2", [point(f64, 1, 1, 0)])
    assert not classify.general_position_on_surface("D6", [point(f64, 1, 1, 0)])


def test_match_report_flags_missing_representatives():
    published = published_representatives("D6", 3)
    report = classify.match_published_representatives("D6", 3, [published[0].point])
    assert not report.ok
    assert report.missing == [published[1].label]
    with pytest.raises(MismatchReport):
        report.raise_for_mismatch()
    full = classify.match_published_representatives("D6", 3, [r.point for r in published])
    assert full.ok
    assert full.matched == {published[0].label: 0, published[1].label: 1}


def test_brute_force_small_plane():
    assert classify.brute_force_class_count("P2", 3) == 1
    with pytest.raises(UnsupportedPair):
        classify.brute_force_class_count("Q", 6)


@pytest.mark.slow
def test_brute_force_d6():
    assert classify.brute_force_class_count("D6", 2) == 1
    assert classify.brute_force_class_count("D6", 3) == 2


def test_size_five_orbits():
    assert classify.size5_orbit_summary() == {
        "orbits": 210,
        "no_three_collinear": 168,
        "single_class": True,
        "irreducible_quintics": 6,
    }
    assert classify.unique_size5_check()


def test_geiser_pairs():
    assert classify.size2_orbits_in_p2_f4() == 7
    pairs = classify.geiser_pairs()
    assert len(pairs) == 2
    for five, two in pairs:
        assert (five.size, two.size) == (5, 2)
    assert classify.geiser_pair_classes() == 2
    first, second = (two for _, two in pairs)
    stabilizer = classify.conic_stabilizer(classify.f4_points_of_p2(first.points[0].ctx))
    for g in stabilizer:
        assert frozenset(classify.point_key(g.act(q)) for q in first.points) != classify.orbit_key(second)


def test_conic_stabilizer_has_order_six(f4):
    points = classify.f4_points_of_p2(f4)
    assert len(points) == 21
    assert sum(classify.on_geiser_conic(p) for p in points) == 5
    stabilizer = classify.conic_stabilizer(points)
    assert len(stabilizer) == 6
    for g in stabilizer:
        assert all(classify.on_geiser_conic(g.act(p)) for p in points if classify.on_geiser_conic(p))


def test_size5_orbit_has_trivial_stabilizer():
    ctx = registry_field(classify.GEISER_FIELD)
    a = embed_with_min_poly(ctx, classify.QUINTIC_MODULUS).value
    five = orbit(frob_model(FrobTag.StdP2), point(ctx, 1, a, ctx.square(a)))
    key = classify.orbit_key(five)
    fixing = [g for g in pgl3_f2().elements if frozenset(classify.point_key(g.act(q)) for q in five.points) == key]
    assert len(fixing) == 1


def _fake_classes():
    out = {}
    for pairs in INVENTORY_ROWS.values():
        for surface, d in pairs:
            out[(surface, d)] = [
                OrbitClass(surface=surface, size=d, field="F2", representative=f"r{i}", orbit=[f"r{i}"], provenance="test")
                for i in range(class_count(surface, d))
            ]
    return out


def test_generator_inventory():
    inventory = classify.generator_inventory(_fake_classes(), classify.geiser_pairs())
    assert inventory.table_totals == INVENTORY_TABLE_TOTALS
    assert inventory.total == 111
    kinds = [row.kind for row in inventory.rows if row.table == "P2"]
    assert kinds == ["automorphism", "orbit", "orbit", "orbit", "geiser_5_plus_2"]
