"""Bivariate Laurent polynomials, ring maps and x-descending truncated series.

``LaurentPoly`` lives in K[x, x^-1, y, y^-1] with coefficients in Q or in a
:class:`~jacpair.exactalg.ParamField`.  ``TruncSeries`` holds series
sum_k c_k x^k (k <= top) whose coefficients come from any commutative ring
implementing + and * (UniPoly, MultiPoly, LocalizedYCoeff, ...).
"""
from __future__ import annotations

import json
import math
from fractions import Fraction

from ._kernels import sparse_mul
from .exactalg import (UniPoly, _is_q, _scale_to_int, format_rational,
                       parse_rational, qdiv, qnorm)

__all__ = [
    "LaurentPoly", "bracket", "RingMap", "apply_map", "bracket_scaling",
    "LocalizedYCoeff", "val_at_zero", "val_at_infinity",
    "TruncSeries", "series_mul", "series_add", "series_inverse", "series_pow",
    "shift_x",
]

_B = 1 << 32
_H = _B >> 1


def _pack(i, j):
    return i * _B + j


def _unpack(k):
    j = (k + _H) % _B - _H
    return (k - j) // _B, j


def _norm(c):
    return qnorm(c) if _is_q(c) else c


class LaurentPoly:
    """Sparse Laurent polynomial sum c_(i,j) x^(i/l) y^j."""

    __slots__ = ("terms", "l")

    def __init__(self, terms=None, l=1):
        if l < 1:
            raise ValueError("l must be a positive integer")
        self.l = l
        t = {}
        for (i, j), c in (terms or {}).items():
            c = _norm(c)
            if c:
                t[(int(i), int(j))] = c
        self.terms = t

    @classmethod
    def _raw(cls, terms, l=1):
        p = cls.__new__(cls)
        p.terms = terms
        p.l = l
        return p

    @classmethod
    def monomial(cls, i, j, c=1):
        return cls({(i, j): c})

    @classmethod
    def x(cls):
        return cls.monomial(1, 0)

    @classmethod
    def y(cls):
        return cls.monomial(0, 1)

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def from_unipoly(cls, u, var="y", shift=0):
        """Embed u(var) times x^shift (or y^shift when var == 'x')."""
        if var == "y":
            return cls({(shift, j): c for j, c in enumerate(u.coeffs) if c})
        return cls({(i, shift): c for i, c in enumerate(u.coeffs) if c})

    @classmethod
    def parse(cls, text):
        from .exactalg import _eval_expr

        v = _eval_expr(text, {"x": cls.x(), "y": cls.y()}, negative_powers=True)
        return v if isinstance(v, LaurentPoly) else cls.const(v)

    # predicates
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def support(self):
        return sorted(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, i, j):
        return self.terms.get((i, j), 0)

    def _check_l(self, other):
        if self.l != other.l:
            raise ValueError("Laurent polynomials with different l")

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            self._check_l(other)
            return other
        if isinstance(other, (int, Fraction)) or hasattr(other, "field"):
            return LaurentPoly({(0, 0): other}, self.l)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        for k, c in o.terms.items():
            v = _norm(t.get(k, 0) + c)
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return LaurentPoly._raw(t, self.l)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self.terms.items()}, self.l)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.terms, o.terms
        if not a or not b:
            return LaurentPoly._raw({}, self.l)
        if len(b) == 1:
            ((bi, bj), cb), = b.items()
            return LaurentPoly._raw(
                {(i + bi, j + bj): _norm(c * cb) for (i, j), c in a.items()}, self.l)
        va, vb = list(a.values()), list(b.values())
        ka = [_pack(i, j) for i, j in a]
        kb = [_pack(i, j) for i, j in b]
        if all(map(_is_q, va)) and all(map(_is_q, vb)):
            da, ia = _scale_to_int(va)
            db, ib = _scale_to_int(vb)
            prod = sparse_mul(dict(zip(ka, ia)), dict(zip(kb, ib)))
            den = da * db
            if den != 1:
                prod = {k: qnorm(Fraction(v, den)) for k, v in prod.items()}
        else:
            prod = sparse_mul(dict(zip(ka, va)), dict(zip(kb, vb)))
        return LaurentPoly._raw({_unpack(k): _norm(v) for k, v in prod.items()}, self.l)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, LaurentPoly):
            if not c.is_monomial():
                raise ValueError("division only by monomials")
            return self * c.inverse_monomial()
        return LaurentPoly._raw({k: _norm(qdiv(v, c) if _is_q(v) and _is_q(c) else v / c)
                                 for k, v in self.terms.items()}, self.l)

    def inverse_monomial(self):
        if not self.is_monomial():
            raise ValueError("only monomials are invertible")
        ((i, j), c), = self.terms.items()
        inv = qdiv(1, c) if _is_q(c) else 1 / c
        return LaurentPoly._raw({(-i, -j): inv}, self.l)

    def __pow__(self, e):
        if e < 0:
            return self.inverse_monomial() ** (-e)
        if self.is_monomial():
            ((i, j), c), = self.terms.items()
            return LaurentPoly._raw({(i * e, j * e): _norm(c ** e)}, self.l)
        result = LaurentPoly._raw({(0, 0): 1}, self.l)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.l == other.l and self.terms == other.terms
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.l, frozenset(self.terms.items())))

    # calculus
    def dx(self):
        if self.l != 1:
            raise ValueError("derivatives need integral exponents (l = 1)")
        return LaurentPoly._raw({(i - 1, j): _norm(c * i) for (i, j), c in self.terms.items() if i}, 1)

    def dy(self):
        if self.l != 1:
            raise ValueError("derivatives need integral exponents (l = 1)")
        return LaurentPoly._raw({(i, j - 1): _norm(c * j) for (i, j), c in self.terms.items() if j}, 1)

    def x_coeffs(self):
        """Map x-exponent -> UniPoly in y (requires nonnegative y exponents)."""
        out = {}
        for (i, j), c in self.terms.items():
            if j < 0:
                raise ValueError("negative y exponent")
            out.setdefault(i, {})[j] = c
        return {i: UniPoly([d.get(j, 0) for j in range(max(d) + 1)]) for i, d in out.items()}

    def map_coeffs(self, fn):
        return LaurentPoly({k: fn(c) for k, c in self.terms.items()}, self.l)

    # serialization
    def to_text(self):
        if not self.terms:
            return "0"
        out = []
        for (i, j) in sorted(self.terms, reverse=True):
            c = self.terms[(i, j)]
            parts = []
            if i and self.l != 1:
                parts.append(f"x^({i}/{self.l})")
            elif i:
                parts.append("x" if i == 1 else f"x^{i}")
            if j:
                parts.append("y" if j == 1 else f"y^{j}")
            mono = "*".join(parts)
            if _is_q(c):
                neg = c < 0
                a = -c if neg else c
                body = mono if (mono and a == 1) else (f"{a}*{mono}" if mono else str(a))
                sep = (" - " if neg else " + ") if out else ("-" if neg else "")
                out.append(sep + body)
            else:
                body = f"({c})*{mono}" if mono else f"({c})"
                out.append((" + " if out else "") + body)
        return "".join(out)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"

    def to_json_obj(self):
        for c in self.terms.values():
            if not _is_q(c):
                raise ValueError("JSON form supports rational coefficients only")
        return {"vars": ["x", "y"], "l": self.l,
                "terms": [{"e": [i, j], "c": format_rational(self.terms[(i, j)])}
                          for (i, j) in sorted(self.terms)]}

    def to_json(self):
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj):
        if obj.get("vars", ["x", "y"]) != ["x", "y"]:
            raise ValueError("expected variables x, y")
        l = int(obj.get("l", 1))
        return cls({tuple(t["e"]): parse_rational(t["c"]) for t in obj["terms"]}, l)

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))


def bracket(p, q):
    """Jacobian [p, q] = p_x q_y - p_y q_x."""
    if p.l != 1 or q.l != 1:
        raise ValueError("bracket is defined for integral supports only")
    return p.dx() * q.dy() - p.dy() * q.dx()


class RingMap:
    """Substitution x -> image_x, y -> image_y on Laurent polynomials."""

    def __init__(self, image_x, image_y, name=""):
        self.image_x = image_x
        self.image_y = image_y
        self.name = name
        self.jacobian_factor = bracket(image_x, image_y)
        if not self.jacobian_factor:
            raise ValueError("ring map with vanishing Jacobian")
        self._mono = None
        if image_x.is_monomial() and image_y.is_monomial():
            (ex, cx), = image_x.terms.items()
            (ey, cy), = image_y.terms.items()
            self._mono = (ex, cx, ey, cy)

    @classmethod
    def swap(cls):
        return cls(LaurentPoly.y(), LaurentPoly.x(), "x<->y")

    @classmethod
    def shear(cls, lam, k):
        """x -> x, y -> y + lam*x^(-k)."""
        return cls(LaurentPoly.x(), LaurentPoly.y() + LaurentPoly.monomial(-k, 0, lam),
                   f"y->y+({lam})x^{-k}")

    @classmethod
    def monomial(cls, k):
        """x -> x^-1, y -> x^k y; acts on exponents as (i, j) -> (kj - i, j)."""
        return cls(LaurentPoly.monomial(-1, 0), LaurentPoly.monomial(k, 1),
                   f"x->x^-1,y->x^{k}y")

    def __repr__(self):
        return f"RingMap({self.name or (self.image_x, self.image_y)})"


def apply_map(m, p):
    """Exact image of p under the substitution m."""
    if p.l != 1:
        raise ValueError("ring maps act on integral supports only")
    if m._mono is not None:
        (ax, bx), cx, (ay, by), cy = m._mono
        out = {}
        for (i, j), c in p.terms.items():
            key = (ax * i + ay * j, bx * i + by * j)
            coef = c
            if cx != 1:
                coef = coef * (Fraction(cx) ** i if _is_q(cx) else cx ** i)
            if cy != 1:
                coef = coef * (Fraction(cy) ** j if _is_q(cy) else cy ** j)
            out[key] = _norm(out.get(key, 0) + coef)
        return LaurentPoly(out)
    X, Y = m.image_x, m.image_y
    xp, yp = {}, {}

    def power(base, cache, e):
        if e not in cache:
            if e < 0 and not base.is_monomial():
                raise ValueError("negative power of a non-monomial image")
            cache[e] = base ** e
        return cache[e]

    acc = LaurentPoly()
    by_j = {}
    for (i, j), c in p.terms.items():
        by_j.setdefault(j, {})[i] = c
    for j, row in by_j.items():
        inner = LaurentPoly()
        for i, c in row.items():
            inner = inner + power(X, xp, i) * c
        acc = acc + inner * power(Y, yp, j)
    return acc


def bracket_scaling(m, bracket_value):
    """Chain rule factor: m([p, q]) * [m(x), m(y)]."""
    return apply_map(m, bracket_value) * m.jacobian_factor


# ---------------------------------------------------------------- localized coefficients

class LocalizedYCoeff:
    """num / base^power with base a fixed polynomial (y or C3 = y^8 (y+1))."""

    __slots__ = ("num", "base", "power")

    def __init__(self, num, base, power=0):
        if power < 0:
            raise ValueError("negative denominator power")
        while power and num and base.divides(num):
            num = num.exquo(base)
            power -= 1
        if not num:
            power = 0
        self.num = num
        self.base = base
        self.power = power

    def _lift(self, other):
        if isinstance(other, LocalizedYCoeff):
            if other.base != self.base:
                raise ValueError("different localizations")
            return other
        if isinstance(other, UniPoly):
            return LocalizedYCoeff(other, self.base)
        if _is_q(other):
            return LocalizedYCoeff(UniPoly([other]), self.base)
        return NotImplemented

    def _at(self, p):
        return self.num * self.base ** (p - self.power)

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        p = max(self.power, o.power)
        return LocalizedYCoeff(self._at(p) + o._at(p), self.base, p)

    __radd__ = __add__

    def __neg__(self):
        return LocalizedYCoeff(-self.num, self.base, self.power)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return LocalizedYCoeff(self.num * o.num, self.base, self.power + o.power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_q(other):
            return LocalizedYCoeff(self.num / other, self.base, self.power)
        raise TypeError("divide by rationals or use div_base")

    def div_base(self, e=1):
        return LocalizedYCoeff(self.num, self.base, self.power + e)

    def times_base(self, e=1):
        if e <= self.power:
            return LocalizedYCoeff(self.num, self.base, self.power - e)
        return LocalizedYCoeff(self.num * self.base ** (e - self.power), self.base, 0)

    def __pow__(self, e):
        return LocalizedYCoeff(self.num ** e, self.base, self.power * e)

    def inverse(self):
        """Inverse of a unit c * base^m / base^power."""
        num, m = self.num, 0
        while num.degree() > 0 and self.base.divides(num):
            num = num.exquo(self.base)
            m += 1
        if num.degree() != 0:
            raise ValueError("not a unit of the localized ring")
        return LocalizedYCoeff(UniPoly([qdiv(1, num[0])]) * self.base ** self.power, self.base, m)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.power == o.power

    def __hash__(self):
        return hash((self.num, self.base, self.power))

    def is_polynomial(self):
        return self.power == 0

    def as_unipoly(self):
        if self.power:
            raise ValueError("coefficient has a nontrivial denominator")
        return self.num

    def __repr__(self):
        if not self.power:
            return f"LocalizedYCoeff({self.num.to_text()})"
        return f"LocalizedYCoeff(({self.num.to_text()})/({self.base.to_text()})^{self.power})"


def val_at_zero(c):
    """Order at y = 0 (negated v_{0,-1} valuation)."""
    if not c:
        raise ValueError("valuation of zero")
    return c.num.ord0() - c.power * c.base.ord0()


def val_at_infinity(c):
    """Degree in y, i.e. v_{0,1}."""
    if not c:
        raise ValueError("valuation of zero")
    return c.num.degree() - c.power * c.base.degree()


# ---------------------------------------------------------------- truncated series

class TruncSeries:
    """sum_{k <= top} c_k x^k with coefficients known for k >= trunc.

    ``trunc is None`` means the series is an exact (finite) sum.
    """

    __slots__ = ("top", "coeffs", "trunc")

    def __init__(self, coeffs, trunc=None, top=None):
        c = {k: v for k, v in coeffs.items() if v and (trunc is None or k >= trunc)}
        self.coeffs = c
        self.trunc = trunc
        if top is None:
            top = max(c) if c else (trunc if trunc is not None else 0)
        self.top = top

    def known(self, k):
        return self.trunc is None or k >= self.trunc

    def __getitem__(self, k):
        if not self.known(k):
            raise ValueError(f"coefficient of x^{k} is below the truncation order {self.trunc}")
        return self.coeffs.get(k, 0)

    def get(self, k, default=0):
        if not self.known(k):
            raise ValueError(f"coefficient of x^{k} is below the truncation order {self.trunc}")
        return self.coeffs.get(k, default)

    def lowest(self):
        return min(self.coeffs) if self.coeffs else None

    def truncate(self, t):
        t2 = t if self.trunc is None else max(t, self.trunc)
        return TruncSeries(self.coeffs, t2, self.top)

    def map(self, fn):
        return TruncSeries({k: fn(v) for k, v in self.coeffs.items()}, self.trunc, self.top)

    def shift(self, n):
        """Multiply by x^n."""
        return TruncSeries({k + n: v for k, v in self.coeffs.items()},
                           None if self.trunc is None else self.trunc + n, self.top + n)

    def scale(self, c):
        return TruncSeries({k: v * c for k, v in self.coeffs.items()}, self.trunc, self.top)

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, other.scale(-1))

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        return self.scale(other)

    def __repr__(self):
        return f"TruncSeries(top={self.top}, trunc={self.trunc}, terms={len(self.coeffs)})"


def _tmax(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def series_add(a, b):
    t = _tmax(a.trunc, b.trunc)
    out = dict(a.coeffs)
    for k, v in b.coeffs.items():
        out[k] = out[k] + v if k in out else v
    return TruncSeries(out, t, max(a.top, b.top))


def series_mul(a, b):
    """Product; known down to max(a.trunc + b.top, b.trunc + a.top)."""
    ta = None if a.trunc is None else a.trunc + b.top
    tb = None if b.trunc is None else b.trunc + a.top
    t = _tmax(ta, tb)
    out = {}
    bitems = list(b.coeffs.items())
    for i, u in a.coeffs.items():
        for j, v in bitems:
            k = i + j
            if t is not None and k < t:
                continue
            w = u * v
            out[k] = out[k] + w if k in out else w
    return TruncSeries(out, t, a.top + b.top)


def series_pow(a, e):
    if e < 1:
        raise ValueError("positive exponent expected")
    r = a
    for _ in range(e - 1):
        r = series_mul(r, a)
    return r


def series_inverse(a, trunc=None):
    """1/a for a series whose top coefficient is a unit (rational or 1).

    Known down to a.trunc - 2*a.top; an exact input needs an explicit trunc.
    """
    lead = a.coeffs.get(a.top)
    if not lead:
        raise ValueError("top coefficient vanishes")
    if a.trunc is not None:
        t = a.trunc - 2 * a.top
        if trunc is not None:
            t = max(t, trunc)
    elif trunc is None:
        raise ValueError("exact series need an explicit truncation order")
    else:
        t = trunc
    if _is_q(lead):
        inv = qdiv(1, lead)
    elif isinstance(lead, UniPoly) and lead.degree() == 0:
        inv = qdiv(1, lead[0])
    elif isinstance(lead, LocalizedYCoeff):
        inv = lead.inverse()
    elif hasattr(lead, "is_constant") and lead.is_constant():
        inv = qdiv(1, lead.constant_value())
    else:
        raise ValueError("top coefficient must be a unit")
    b = {-a.top: inv}
    for n in range(1, -a.top - t + 1):
        acc = None
        for i in range(1, n + 1):
            ai = a.coeffs.get(a.top - i)
            bj = b.get(-a.top - n + i)
            if ai is not None and bj is not None and ai and bj:
                w = ai * bj
                acc = w if acc is None else acc + w
        if acc is not None and acc:
            b[-a.top - n] = acc * (-inv)
    return TruncSeries(b, t, -a.top)


def shift_x(series, c, trunc=None):
    """Substitute x -> x + c: sum_k c_k (x + c)^k, expanded binomially."""
    t = _tmax(series.trunc, trunc)
    if t is None and any(k < 0 for k in series.coeffs):
        raise ValueError("negative exponents need a truncation order")
    out = {}
    cpow = {0: 1}

    def cp(n):
        if n not in cpow:
            cpow[n] = cp(n - 1) * c
        return cpow[n]

    for k, v in series.coeffs.items():
        n = 0
        while True:
            e = k - n
            if t is not None and e < t:
                break
            if k >= 0 and n > k:
                break
            b = _gen_binom(k, n)
            if b:
                w = v * cp(n) * b if n else v
                out[e] = out[e] + w if e in out else w
            n += 1
    return TruncSeries(out, t, series.top)


def _gen_binom(k, n):
    """binom(k, n) for any integer k."""
    if k >= 0:
        return math.comb(k, n) if n <= k else 0
    # binom(-m, n) = (-1)^n binom(m + n - 1, n)
    m = -k
    return (-1) ** n * math.comb(m + n - 1, n)
