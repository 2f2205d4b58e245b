import pytest

from cremona_f2.errors import ArityMismatch, MixedContexts, ParseError, ZeroPolynomial
from cremona_f2.poly import MPoly, degree_info, parse_poly, partial_derivative, poly_divmod, poly_eval

NAMES = ("x", "y", "z")


def test_text_round_trip(f4):
    p = parse_poly("x^2 + a*y*z + a^2*z^2 + 1", f4, NAMES)
    assert parse_poly(p.to_text(NAMES), f4, NAMES) == p
    assert parse_poly("x*y + z^2", f4, NAMES).to_text(NAMES) == "x*y + z^2"


def test_unknown_symbol_is_a_parse_error(f4):
    with pytest.raises(ParseError):
        parse_poly("w + x", f4, NAMES)


def test_characteristic_two(f2):
    x, y, _ = MPoly.gens(f2, 3)
    assert (x + y) * (x + y) == x * x + y * y
    assert (x + y).square() == x * x + y * y
    assert x + x == MPoly.zero(f2, 3)


def test_partial_derivative_drops_even_powers(f2):
    p = parse_poly("x^3*y + x^2*z + y*z", f2, NAMES)
    assert partial_derivative(p, 0) == parse_poly("x^2*y", f2, NAMES)
    assert partial_derivative(p, 2) == parse_poly("x^2 + y", f2, NAMES)
    with pytest.raises(ArityMismatch):
        p.partial_derivative(3)


def test_compose_and_eval_agree(f8):
    x, y, z = MPoly.gens(f8, 3)
    p = parse_poly("x^2*y + a*z^3 + y*z", f8, NAMES)
    subs = [y * z, x * z + y * y, x.scale(f8.x) + z]
    composed = p.compose(subs)
    for point in ([1, 2, 3], [5, 0, 7], [6, 6, 1]):
        inner = [s.eval(point) for s in subs]
        assert composed.eval(point) == p.eval(inner)


def test_poly_eval_checks_arity_and_field(f4, f8):
    p = parse_poly("x + y", f4, ("x", "y"))
    assert poly_eval(p, [f4.elem(1), f4.elem(2)]) == f4.elem(3)
    with pytest.raises(ArityMismatch):
        poly_eval(p, [f4.elem(1)])
    with pytest.raises(MixedContexts):
        poly_eval(p, [f8.elem(1), f8.elem(2)])


def test_degree_info(f2):
    p = parse_poly("x0*y0 + x1*y1", f2, ("x0", "x1", "y0", "y1"))
    info = degree_info(p)
    assert info == {"total_degree": 2, "is_homogeneous": True, "bidegree": (1, 1)}
    q = parse_poly("x^2 + y", f2, NAMES)
    assert not q.is_homogeneous()
    with pytest.raises(ZeroPolynomial):
        MPoly.zero(f2, 3).total_degree()


def test_exact_division(f2):
    x, y, z = MPoly.gens(f2, 3)
    f = (x + y) * (y * z + x * x)
    assert f.exact_div(x + y) == y * z + x * x
    assert (f + z).exact_div(x + y) is None
    assert (f % (x + y)).is_zero()
    q, r = poly_divmod(f + z, x + y)
    assert q * (x + y) + r == f + z
    assert not r.is_zero()


def test_mixed_contexts_are_rejected(f2, f4):
    with pytest.raises(MixedContexts):
        MPoly.var(f2, 3, 0) + MPoly.var(f4, 3, 0)


def test_coefficient_frobenius(f4):
    p = parse_poly("a*x^2 + a^2*y*z + z", f4, NAMES)
    assert p.coeff_frobenius() == parse_poly("a^2*x^2 + a*y*z + z", f4, NAMES)
    assert p.coeff_frobenius(2) == p
    point = [2, 3, 1]
    squared = [f4.square(u) for u in point]
    assert p.coeff_frobenius().eval(squared) == f4.square(p.eval(point))
