from fractions import Fraction

import pytest
import sympy as sp

from jacpair.exactalg import UniPoly
from jacpair.laurent import (LaurentPoly, LocalizedYCoeff, RingMap, TruncSeries, apply_map, bracket,
                             series_inverse, series_mul, series_pow, shift_x, val_at_infinity,
                             val_at_zero)

x, t = sp.symbols("x t")


def test_parse_roundtrip_and_json():
    p = LaurentPoly.parse("3*x^-2*y + x*y^4 - 1/2")
    assert p.coeff(-2, 1) == 3 and p.coeff(0, 0) == Fraction(-1, 2)
    assert LaurentPoly.parse(p.to_text()) == p
    assert LaurentPoly.from_json(p.to_json()) == p


def test_bracket_of_generators():
    assert bracket(LaurentPoly.x(), LaurentPoly.y()) == LaurentPoly.const(1)
    p = LaurentPoly.parse("x^2*y")
    q = LaurentPoly.parse("x*y^3")
    # 2xy * 3xy^2 - x^2 * y^3 = 5 x^2 y^3
    assert bracket(p, q) == LaurentPoly.parse("5*x^2*y^3")


def test_monomial_map_on_exponents():
    m = RingMap.monomial(3)
    out = apply_map(m, LaurentPoly.parse("x^2*y^5"))
    assert out == LaurentPoly.monomial(13, 5)
    assert m.jacobian_factor == LaurentPoly.parse("-x")


def test_shear_expands():
    m = RingMap.shear(2, 3)
    out = apply_map(m, LaurentPoly.parse("y^2"))
    assert out == LaurentPoly.parse("y^2 + 4*x^-3*y + 4*x^-6")


def test_degenerate_map_rejected():
    with pytest.raises(ValueError):
        RingMap(LaurentPoly.x(), LaurentPoly.x())


def _sympy_series(coeffs, n):
    # coefficients of x^k for k <= top as a series in t = 1/x
    return sum(sp.Rational(c.numerator, c.denominator) * t ** (-k) for k, c in coeffs.items())


def test_series_inverse_matches_sympy():
    a = TruncSeries({2: Fraction(1), 1: Fraction(3), 0: Fraction(-2), -1: Fraction(5, 2)}, -1)
    inv = series_inverse(a, -8)
    expr = 1 / _sympy_series(a.coeffs, 8)
    ser = sp.series(expr, t, 0, 9).removeO()
    # input known three steps below its top, so the inverse is too
    assert inv.trunc == -5
    for k in range(-5, -1):
        assert sp.Rational(inv.get(k)) == ser.coeff(t, -k), k


def test_series_product_and_power():
    a = TruncSeries({3: 1, 1: 2, 0: -1}, None)
    b = series_mul(a, a)
    assert series_pow(a, 2).coeffs == b.coeffs
    poly = sp.expand((x**3 + 2 * x - 1) ** 2)
    assert all(b.get(k) == poly.coeff(x, k) for k in range(0, 7))


def test_truncation_guard():
    a = TruncSeries({1: 1, 0: 2}, -3)
    with pytest.raises(ValueError):
        a.get(-4)


def test_shift_x_matches_sympy():
    a = TruncSeries({3: Fraction(1), 1: Fraction(2), -1: Fraction(1)}, -6)
    c = Fraction(1, 3)
    out = shift_x(a, c)
    ser = sp.series((1 / t + c) ** 3 + 2 * (1 / t + c) + 1 / (1 / t + c), t, 0, 7).removeO()
    for k in range(-6, 4):
        assert sp.Rational(out.get(k)) == sp.expand(ser).coeff(t, -k), k


def test_localized_coeff_reduces():
    base = UniPoly.parse("y")
    c = LocalizedYCoeff(UniPoly.parse("y^2/2"), base, 3)
    assert c.power == 1 and c.num == UniPoly.parse("1/2")
    prod = c * LocalizedYCoeff(UniPoly.parse("y"), base)
    assert prod.is_polynomial() and prod.as_unipoly() == UniPoly.parse("1/2")
    assert val_at_zero(c) == -1
