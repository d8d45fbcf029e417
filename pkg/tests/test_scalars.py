import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ographinv.scalars import (
    Cyclo,
    cyclotomic_polynomial,
    embed_complex,
    is_zero,
    parse_scalar,
    render_scalar,
    zeta,
)


def test_zeta_small_orders_are_rational():
    assert zeta(1) == Fraction(1)
    assert zeta(2) == Fraction(-1)


def test_zeta4_squares_to_minus_one():
    assert zeta(4) * zeta(4) == Fraction(-1)


def test_zeta3_cubes_to_one():
    z = zeta(3)
    assert z * z * z == Fraction(1)


def test_zeta3_plus_square_is_minus_one():
    z = zeta(3)
    assert z + z * z == Fraction(-1)


def test_inverse_of_one_minus_zeta5_matches_float():
    z = zeta(5)
    inv = 1 / (1 - z)
    want = 1 / (1 - cmath.exp(2j * cmath.pi / 5))
    assert abs(embed_complex(inv) - want) < 1e-10
    assert (1 - z) * inv == Fraction(1)


def test_mixed_orders_rejected():
    with pytest.raises(ValueError):
        zeta(3) + zeta(5)


def test_rational_operand_promotes():
    z = zeta(3)
    assert (z + 1) - 1 == z
    assert Fraction(1, 2) * z * 2 == z


def test_constant_residue_demotes_to_fraction():
    z = zeta(3)
    v = z - z + Fraction(7, 3)
    assert isinstance(v, Fraction) and v == Fraction(7, 3)
    # zeta3 * zeta3^2 = 1 exactly, as a Fraction
    assert isinstance(z * (z * z), Fraction)


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        zeta(3) / 0


def test_cyclotomic_polynomial_values():
    one = Fraction(1)
    assert cyclotomic_polynomial(3) == [one, one, one]
    assert cyclotomic_polynomial(4) == [one, Fraction(0), one]
    assert cyclotomic_polynomial(6) == [one, -one, one]


def test_power_matches_repeated_product():
    z = zeta(5)
    acc = Fraction(1)
    for k in range(6):
        assert z ** k == acc
        acc = acc * z
    assert z ** -1 == z ** 4


def test_render_and_parse_round_trip():
    samples = [
        Fraction(0),
        Fraction(-2),
        Fraction(7, 3),
        zeta(3),
        zeta(3) ** 2,
        1 - zeta(5) + Fraction(1, 2) * zeta(5) ** 3,
        -zeta(4),
    ]
    for s in samples:
        assert parse_scalar(render_scalar(s)) == s


def test_render_examples():
    # zeta(3)^2 reduces to its canonical residue -1 - z before printing
    assert render_scalar(zeta(3) ** 2) == "(-1 - z) @ zeta(3)"
    assert render_scalar(zeta(5) ** 2) == "(z^2) @ zeta(5)"
    assert render_scalar(Fraction(-2)) == "-2"


small_rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


def cyclo3(draw_vec):
    z = zeta(3)
    return draw_vec[0] + draw_vec[1] * z


cyclo_values = st.builds(
    lambda a, b: a + b * zeta(3), small_rationals, small_rationals
)


@given(cyclo_values, cyclo_values, cyclo_values)
def test_field_laws_associativity_distributivity(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(cyclo_values)
def test_additive_and_multiplicative_inverse(a):
    assert is_zero(a + (-a) if isinstance(a, Cyclo) else a - a)
    if not is_zero(a):
        assert a * (1 / a if isinstance(a, Cyclo) else Fraction(1) / a) == Fraction(1)


@given(cyclo_values, cyclo_values)
def test_embedding_is_a_homomorphism(a, b):
    assert abs(embed_complex(a) + embed_complex(b) - embed_complex(a + b)) < 1e-10
    assert abs(embed_complex(a) * embed_complex(b) - embed_complex(a * b)) < 1e-10
