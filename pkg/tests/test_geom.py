import pytest

from cremona_f2.errors import TooManyPoints, ZeroInverse, ZeroVector
from cremona_f2.geom import (
    general_position_p1xp1,
    general_position_p2,
    kernel_dimension,
    matmul,
    matrix_inverse,
    monomial_basis,
    normalize_ints,
    point,
    point_text,
    points_of_p2,
    position_matrix,
    rank,
)


def test_normalization(f4):
    assert normalize_ints("P2", (2, 2, 0), f4).coords == (1, 1, 0)
    assert normalize_ints("P2", (0, 3, 2), f4).coords == (0, 1, f4.mul(2, f4.inv(3)))
    q = normalize_ints("P1xP1", (0, 2, 3, 3), f4)
    assert q.coords == (0, 1, 1, 1)
    assert q.text() == "([0:1],[1:1])"
    assert point_text(normalize_ints("P2", (0, 1, 0), f4)) == "[0:1:0]"
    with pytest.raises(ZeroVector):
        normalize_ints("P2", (0, 0, 0), f4)
    with pytest.raises(ZeroVector):
        normalize_ints("P1xP1", (1, 0, 0, 0), f4)


def test_point_counts(f2, f4):
    assert len(list(points_of_p2(f2))) == 7
    assert len(set(points_of_p2(f4))) == 21


def test_monomial_basis_sizes():
    assert len(monomial_basis("P2", 2)) == 6
    assert len(monomial_basis("P2", 3)) == 10
    assert len(monomial_basis("P1xP1", (2, 1))) == 6
    assert monomial_basis("P2", 1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_rank_of_four_general_points(f2):
    pts = [point(f2, 1, 0, 0), point(f2, 0, 1, 0), point(f2, 0, 0, 1), point(f2, 1, 1, 1)]
    m = position_matrix(pts, 1)
    assert rank(m) == 3
    assert kernel_dimension(m) == 0
    assert general_position_p2(pts).ok


def test_collinear_points_are_reported(f2):
    pts = [point(f2, 1, 0, 0), point(f2, 0, 1, 0), point(f2, 1, 1, 0)]
    report = general_position_p2(pts)
    assert not report.ok
    assert report.violated == "Collinear3"
    assert report.witness == (0, 1, 2)


def test_six_points_on_a_conic(f8):
    # y² = xz 위의 점 [1:t:t²]
    pts = [point(f8, 1, t, f8.square(t)) for t in range(6)]
    report = general_position_p2(pts)
    assert report.violated == "Conic6"


def test_fano_plane_has_collinear_triples(f2):
    # P²(F₂)의 7점 중 3점은 항상 공선
    pts = list(points_of_p2(f2))
    assert general_position_p2(pts).violated == "Collinear3"


def test_same_ruling(f4):
    pts = [normalize_ints("P1xP1", (1, 1, 1, 0), f4), normalize_ints("P1xP1", (1, 1, 0, 1), f4)]
    report = general_position_p1xp1(pts)
    assert report.violated == "Ruling2"


def test_too_many_points(f16):
    pts = [point(f16, 1, t, f16.square(t)) for t in range(9)]
    with pytest.raises(TooManyPoints):
        general_position_p2(pts)


def test_matrix_inverse(f4):
    m = [[1, 2, 0], [0, 1, 3], [2, 0, 1]]
    inv = matrix_inverse(f4, m)
    assert matmul(f4, m, inv) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    with pytest.raises(ZeroInverse):
        matrix_inverse(f4, [[1, 1, 0], [1, 1, 0], [0, 0, 1]])
