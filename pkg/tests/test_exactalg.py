from fractions import Fraction

import pytest
import sympy as sp
from sympy.polys.subresultants_qq_zz import sylvester

from jacpair.exactalg import (ParamField, PolyRing, UniPoly, is_separable, is_square_up_to_constant,
                              mpoly_gcd, multiplicity, poly_gcd, poly_sqrt, resultant,
                              solve_linear_system, squarefree)

y = sp.Symbol("y")


def to_sp(u):
    return sp.sympify(u.to_text().replace("^", "**"), locals={"y": y}) if u else sp.Integer(0)


def test_parse_and_arith():
    p = UniPoly.parse("(y+1)^3")
    assert list(p.coeffs) == [1, 3, 3, 1]
    assert p.degree() == 3 and p.lc() == 1
    q, r = p.divmod(UniPoly.parse("y+1"))
    assert not r and q == UniPoly.parse("(y+1)^2")
    assert p.derivative() == UniPoly.parse("3*(y+1)^2")
    assert p.compose(UniPoly.parse("y-1")) == UniPoly.parse("y^3")


def test_exquo_rejects_remainder():
    with pytest.raises(ValueError):
        UniPoly.parse("y^2+1").exquo(UniPoly.parse("y+1"))


@pytest.mark.parametrize("a,b", [("(y+1)^2*(y-3)", "(y+1)*(y^2+2)"), ("y^4-1", "y^6-1"), ("2*y+1", "3")])
def test_gcd_matches_sympy(a, b):
    g = poly_gcd(UniPoly.parse(a), UniPoly.parse(b))
    want = sp.gcd(sp.sympify(a.replace("^", "**")), sp.sympify(b.replace("^", "**")))
    assert sp.simplify(to_sp(g) / want).is_number


def test_squarefree_and_multiplicity():
    p = UniPoly.parse("y^8*(y+1)^3*(y-2)")
    _, facs = squarefree(p)
    got = sorted((m, f.to_text()) for f, m in facs)
    assert got == [(1, "y - 2"), (3, "y + 1"), (8, "y")]
    assert multiplicity(p, UniPoly.parse("y+1")) == 3
    assert is_separable(UniPoly.parse("y^2-2")) and not is_separable(p)


def test_poly_sqrt():
    s = poly_sqrt(UniPoly.parse("4*(y^2-3*y+1/2)^2"))
    assert s * s == UniPoly.parse("4*(y^2-3*y+1/2)^2")
    assert poly_sqrt(UniPoly.parse("y^2+1")) is None
    assert is_square_up_to_constant(UniPoly.parse("-3*(y+2)^2"))


def test_multivariate_ring():
    R = PolyRing(["a", "b", "y"])
    p = R.parse("a^2*b + 3*a*y - y^3")
    assert p.degree("a") == 2 and p.degree("y") == 3
    assert p.subs({"a": R.parse("b+1")}) == R.parse("(b+1)^2*b + 3*(b+1)*y - y^3")
    assert (p * R.parse("a-b")).exquo(R.parse("a-b")) == p
    g = mpoly_gcd(R.parse("(a+b)^2*(y-1)"), R.parse("(a+b)*(y+1)"))
    assert g.primitive() == R.parse("a+b").primitive() or g.primitive() == (-R.parse("a+b")).primitive()


def test_resultant_matches_sympy():
    R = PolyRing(["a", "t"])
    p, q = R.parse("t^2 + a*t - 1"), R.parse("a*t^3 - 2*t + a^2")
    a, t = sp.symbols("a t")
    want = sylvester(t**2 + a * t - 1, a * t**3 - 2 * t + a**2, t).det()
    got = sp.sympify(resultant(p, q, "t").to_text().replace("^", "**"), locals={"a": a})
    assert sp.expand(got - want) == 0


def test_solve_linear_system():
    sol, nullity = solve_linear_system([[1, 2], [3, 4]], [5, 6])
    assert sol == [Fraction(-4), Fraction(9, 2)] and nullity == 0
    sol, nullity = solve_linear_system([[1, 1], [2, 2]], [1, 3])
    assert sol is None


def test_param_field():
    K = ParamField(["alpha", "lam"])
    a, l = K.gen("alpha"), K.gen("lam")
    e = (a ** 2 - l ** 2) / (a - l)
    assert e == a + l
    assert (a / l) * l == a


def test_resultant_sign_convention():
    # Res(f, g) = lc(f)^deg(g) * prod g(roots of f): Res(y + 1, y^3) = (-1)^3
    R = PolyRing(["y"])
    assert resultant(R.parse("y+1"), R.parse("y^3"), "y").constant_value() == -1
    assert resultant(R.parse("y^3"), R.parse("y+1"), "y").constant_value() == 1
