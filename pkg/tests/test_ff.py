import galois
import pytest

from cremona_f2.errors import (
    CremonaError,
    MixedFields,
    NoSuchElement,
    NotADivisor,
    ReducibleModulus,
    UnsupportedDegree,
    ZeroInverse,
)
from cremona_f2.ff import (
    conjugates,
    create_field,
    element_order,
    embed_with_min_poly,
    find_generator,
    frobenius,
    irreducible_polynomials,
    is_irreducible,
    load_registry,
    make_embedding,
    minimal_polynomial,
    registry_field,
    roots_of_unity,
)


def test_f4_arithmetic(f4):
    x = f4.x
    assert x == 0b10
    assert f4.mul(x, x) == 0b11
    assert f4.mul(x, 0b11) == 1
    assert f4.inv(x) == 0b11
    assert f4.pow(x, 3) == 1


def test_negative_power_is_inverse_power(f16):
    for a in range(1, 16):
        assert f16.pow(a, -1) == f16.inv(a)
        assert f16.mul(f16.pow(a, -5), f16.pow(a, 5)) == 1


def test_multiplication_matches_galois(f256):
    field = galois.GF(2**8, irreducible_poly=f256.modulus)
    for a in range(0, 256, 7):
        for b in range(1, 256, 11):
            assert f256.mul(a, b) == int(field(a) * field(b))
        if a:
            assert f256.inv(a) == int(field(a) ** -1)


def test_large_field_without_tables_matches_galois():
    ctx = registry_field("F2_20")
    field = galois.GF(2**20, irreducible_poly=ctx.modulus)
    samples = [3, 12345, 2**19 + 77, 987654]
    for a in samples:
        for b in samples:
            assert ctx.mul(a, b) == int(field(a) * field(b))


def test_discrete_log_by_baby_step_giant_step():
    ctx = registry_field("F2_20")
    g = ctx.generator
    for k in (0, 1, 12345, 2**20 - 2):
        assert ctx.dlog(ctx.pow(g, k)) == k


def test_reducible_modulus_is_rejected():
    with pytest.raises(ReducibleModulus):
        create_field([1, 0, 1])


@pytest.mark.parametrize("coeffs", [[1], [1] + [0] * 30 + [1]])
def test_modulus_degree_out_of_range(coeffs):
    with pytest.raises(UnsupportedDegree) as info:
        create_field(coeffs)
    assert isinstance(info.value, CremonaError)


def test_zero_has_no_inverse(f8):
    with pytest.raises(ZeroInverse):
        f8.inv(0)


def test_mixed_fields(f4, f8):
    with pytest.raises(MixedFields):
        f4.elem(1) + f8.elem(1)


def test_text_and_parse_round_trip(f16, f64):
    for ctx in (f16, f64):
        for a in range(ctx.order):
            assert ctx.parse(ctx.text(a)) == a


def test_text_uses_powers_of_x_when_x_is_primitive(f16):
    assert f16.generator == f16.x
    assert f16.text(f16.x) == "a"
    assert f16.text(f16.power_of_x(7)) == "a^7"
    assert f16.parse("a^-1") == f16.inv(f16.x)


def test_roots_of_unity(f64):
    roots = roots_of_unity(f64, 21)
    assert len(roots) == 21
    assert all(r ** 21 == 1 for r in roots)
    with pytest.raises(NotADivisor):
        roots_of_unity(f64, 5)


def test_minimal_polynomial_and_conjugates(f8):
    assert minimal_polynomial(f8.elem(f8.x)) == list(load_registry()["F8"])
    assert len(conjugates(f8, f8.x)) == 3
    assert conjugates(f8, 1) == [1]


def test_frobenius_has_period_dividing_degree(f16):
    u = f16.elem(0b0110)
    assert frobenius(u, 4) == u
    assert frobenius(u) == u * u


def test_generator_has_full_order(f64):
    assert element_order(find_generator(f64)) == 63


def test_irreducible_polynomials():
    assert irreducible_polynomials(2) == [[1, 1, 1]]
    assert len(irreducible_polynomials(5)) == 6
    assert is_irreducible([1, 0, 1, 0, 0, 1])
    assert not is_irreducible([1, 0, 0, 0, 0, 1])


def test_embedding_is_a_homomorphism(f4, f16):
    e = make_embedding(f4, f16)
    for a in range(4):
        for b in range(4):
            assert e(f4.mul(a, b)) == f16.mul(e(a), e(b))
            assert e(a ^ b) == e(a) ^ e(b)


def test_embed_with_min_poly_requires_a_subfield(f8):
    with pytest.raises(NoSuchElement):
        embed_with_min_poly(f8, [1, 1, 1])


@pytest.mark.parametrize("key", sorted(load_registry()))
def test_registry_moduli_are_irreducible(key):
    ctx = registry_field(key)
    assert ctx.name == key
    assert is_irreducible(ctx.modulus)
