import pytest

from cremona_f2.errors import IndeterminatePoint, UnsupportedSize
from cremona_f2.frob import (
    FrobTag,
    apply,
    candidates_d5,
    candidates_d6,
    candidates_p2,
    candidates_q,
    frob_model,
    frobenius_representatives,
    labelled_candidates,
    orbit,
    orbit_size,
    twist_iterate,
)
from cremona_f2.geom import normalize_ints, point
from cremona_f2.poly import MPoly


def test_standard_frobenius_squares_coordinates(f8):
    model = frob_model(FrobTag.StdP2)
    a = f8.x
    p = point(f8, 1, a, f8.square(a))
    assert apply(model, p) == point(f8, 1, f8.square(a), f8.pow(a, 4))
    o = orbit(model, p)
    assert o.size == 3
    assert o.points[0] == p
    assert apply(model, o.points[-1]) == p


def test_rational_points_are_fixed(f8):
    model = frob_model("StdP2")
    assert orbit_size(model, point(f8, 1, 1, 0)) == 1


def test_q_twist_swaps_the_factors(f4):
    model = frob_model(FrobTag.QTwist)
    p = normalize_ints("P1xP1", (1, 0, 0, 1), f4)
    assert apply(model, p) == normalize_ints("P1xP1", (0, 1, 1, 0), f4)
    assert orbit_size(model, p) == 2


def test_d6_twist_is_undefined_at_coordinate_points(f64):
    model = frob_model(FrobTag.D6Twist)
    p = point(f64, 1, 0, 0)
    with pytest.raises(IndeterminatePoint):
        apply(model, p)
    assert orbit_size(model, p) == 0


def test_twist_iterate_of_standard_frobenius(f2):
    x, y, z = MPoly.gens(f2, 3)
    assert twist_iterate(frob_model(FrobTag.StdP2), 3) == (x ** 8, y ** 8, z ** 8)


def test_frobenius_representatives(f8):
    reps = frobenius_representatives(f8)
    assert reps[:2] == [0, 1]
    assert len(reps) == 4


@pytest.mark.parametrize(
    ("make", "d", "expected"),
    [
        (candidates_p2, 3, 32),
        (candidates_p2, 6, 128),
        (candidates_q, 4, 225),
        (candidates_q, 6, 3969),
        (candidates_d6, 2, 21),
        (candidates_d6, 3, 81),
        (candidates_d6, 4, 273),
    ],
)
def test_candidate_counts(make, d, expected):
    assert len(make(d)) == expected


def test_d5_size3_candidates_skip_the_prime_field():
    points = candidates_d5(3)
    assert len(points) == 65
    assert all(p.coords[2] not in (0, 1) for p in points)
    assert all(p.coords != (1, 1, 1) for p in points)


@pytest.mark.slow
def test_d5_size4_candidates():
    assert len(candidates_d5(4)) == 257


def test_candidates_carry_their_shape_label():
    labels = {label for label, _ in labelled_candidates("P2", 8)}
    assert labels == {"[1:y:λ]", "[1:y:λ²+λy]"}


def test_unsupported_sizes():
    with pytest.raises(UnsupportedSize):
        candidates_p2(4)
    with pytest.raises(UnsupportedSize):
        labelled_candidates("D5", 5)
