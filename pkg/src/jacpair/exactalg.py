"""Exact arithmetic over Q.

Scalars are ``int`` or ``fractions.Fraction`` (integral fractions are folded
back to ``int``).  On top of them sit dense univariate polynomials
(:class:`UniPoly`), sparse multivariate polynomials in named indeterminates
(:class:`MultiPoly`) and rational functions in named parameters
(:class:`ParamField` / :class:`ParamFraction`), together with gcd, squarefree,
resultant, square-root and multiplicity primitives.
"""
from __future__ import annotations

import ast
import heapq
import math
from fractions import Fraction
from functools import reduce

from ._kernels import convolve, sparse_mul

__all__ = [
    "qnorm", "qdiv", "parse_rational", "format_rational", "rational_sqrt",
    "UniPoly", "PolyRing", "MultiPoly", "ParamField", "ParamFraction",
    "poly_gcd", "is_separable", "squarefree", "is_square_up_to_constant",
    "poly_sqrt", "multiplicity", "resultant", "bareiss_det", "mpoly_gcd",
    "mpoly_sqrt", "solve_linear_system",
]


# ---------------------------------------------------------------- scalars

def qnorm(c):
    """Fold integral Fractions back to int."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def qdiv(a, b):
    """Exact quotient; never produces a float."""
    if type(a) is int and type(b) is int:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return qnorm(Fraction(a, b))
    return qnorm(a / b) if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)) else a / b


def _is_q(c):
    return type(c) is int or type(c) is Fraction


def parse_rational(s):
    return qnorm(Fraction(str(s).strip()))


def format_rational(c):
    return str(qnorm(Fraction(c)))


def rational_sqrt(c):
    """Square root of a rational if it is a rational square, else None."""
    c = Fraction(c)
    if c < 0:
        return None
    n, d = c.numerator, c.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return qnorm(Fraction(rn, rd))


def _coeff_sqrt(c):
    if _is_q(c):
        return rational_sqrt(c)
    return c.sqrt()


def _scale_to_int(coeffs):
    """Common denominator D and the integer list D*coeffs."""
    den = 1
    for c in coeffs:
        if type(c) is Fraction:
            den = den * c.denominator // math.gcd(den, c.denominator)
    if den == 1:
        return 1, list(coeffs)
    return den, [int(c * den) for c in coeffs]


# ---------------------------------------------------------------- text I/O

_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def _eval_expr(text, names, negative_powers=False):
    """Evaluate a polynomial expression using ``names`` for identifiers.

    Only numbers, identifiers, + - * / ^ (or **) and parentheses are allowed.
    """
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return node.value
        if isinstance(node, ast.Name):
            try:
                return names[node.id]
            except KeyError:
                raise ValueError(f"unknown indeterminate {node.id!r}") from None
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _BINOPS):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return qdiv(a, b) if _is_q(a) else a / b
            if type(b) is not int or (b < 0 and not negative_powers):
                raise ValueError("exponents must be non-negative integers")
            return a ** b
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)


def _fmt_term(c, mono, first):
    """Format one term; ``mono`` is the monomial string ('' for constants)."""
    c = qnorm(c)
    neg = c < 0
    a = -c if neg else c
    if mono and a == 1:
        body = mono
    elif mono:
        body = f"{a}*{mono}"
    else:
        body = str(a)
    if first:
        return f"-{body}" if neg else body
    return f" - {body}" if neg else f" + {body}"


# ---------------------------------------------------------------- UniPoly

class UniPoly:
    """Dense univariate polynomial, coefficients listed from degree 0 upward.

    Coefficients are rationals by default but may be any field elements
    (e.g. :class:`ParamFraction`).
    """

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [qnorm(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def _raw(cls, c):
        p = cls.__new__(cls)
        c = list(c)
        while c and not c[-1]:
            c.pop()
        p.c = tuple(c)
        return p

    @classmethod
    def constant(cls, a):
        return cls([a])

    @classmethod
    def monomial(cls, k, a=1):
        return cls([0] * k + [a])

    @classmethod
    def gen(cls):
        return cls([0, 1])

    @classmethod
    def parse(cls, text, var="y"):
        v = _eval_expr(text, {var: cls.gen()})
        return v if isinstance(v, UniPoly) else cls([v])

    # basic data
    @property
    def coeffs(self):
        return self.c

    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def lc(self):
        return self.c[-1] if self.c else 0

    def __getitem__(self, k):
        return self.c[k] if 0 <= k < len(self.c) else 0

    def is_constant(self):
        return len(self.c) <= 1

    def ord0(self):
        """Order of vanishing at y = 0."""
        if not self.c:
            raise ValueError("order of the zero polynomial")
        for i, x in enumerate(self.c):
            if x:
                return i

    def is_rational(self):
        return all(_is_q(x) for x in self.c)

    # arithmetic
    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, MultiPoly):
            return NotImplemented
        return UniPoly([other])

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return UniPoly._raw(qnorm(x) for x in out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw(-x for x in self.c)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            if isinstance(other, MultiPoly):
                return NotImplemented
            if not other:
                return UniPoly()
            return UniPoly._raw(qnorm(x * other) for x in self.c)
        a, b = self.c, other.c
        if not a or not b:
            return UniPoly()
        if all(map(_is_q, a)) and all(map(_is_q, b)):
            da, ia = _scale_to_int(a)
            db, ib = _scale_to_int(b)
            prod = convolve(ia, ib)
            den = da * db
            if den == 1:
                return UniPoly._raw(prod)
            return UniPoly._raw(qnorm(Fraction(v, den)) for v in prod)
        return UniPoly._raw(convolve(list(a), list(b)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, UniPoly):
            return self.exquo(other)
        return UniPoly._raw(qdiv(x, other) for x in self.c)

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power")
        result = UniPoly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divmod(self, other):
        """Euclidean division over the coefficient field."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        db = other.degree()
        lcb = other.c[-1]
        if len(r) - 1 < db:
            return UniPoly(), self
        q = [0] * (len(r) - db)
        bc = other.c
        for k in range(len(r) - 1 - db, -1, -1):
            t = r[k + db]
            if t:
                t = qdiv(t, lcb)
                q[k] = t
                for i, x in enumerate(bc):
                    if x:
                        r[k + i] = r[k + i] - t * x
        return UniPoly(q), UniPoly(r[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exquo(self, other):
        q, r = self.divmod(other)
        if r:
            raise ValueError("inexact polynomial division")
        return q

    def divides(self, other):
        """True iff self | other."""
        return not other.divmod(self)[1]

    def shift(self, k):
        """Multiply by y^k (k may be negative when y^-k divides)."""
        if k >= 0:
            return UniPoly._raw((0,) * k + self.c)
        if any(self.c[:-k]):
            raise ValueError("y^%d does not divide" % -k)
        return UniPoly._raw(self.c[-k:])

    def derivative(self):
        return UniPoly._raw(qnorm(i * x) for i, x in enumerate(self.c) if i)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return qnorm(acc) if _is_q(acc) else acc

    def monic(self):
        if not self.c:
            return self
        return self / self.lc()

    def compose(self, other):
        acc = UniPoly()
        for a in reversed(self.c):
            acc = acc * other + a
        return acc

    # comparison / hashing / text
    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.c == other.c
        if isinstance(other, MultiPoly):
            return NotImplemented
        try:
            return self.c == UniPoly([other]).c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(("UniPoly", self.c))

    def to_text(self, var="y"):
        if not self.c:
            return "0"
        if not self.is_rational():
            parts = []
            for k in range(len(self.c) - 1, -1, -1):
                x = self.c[k]
                if x:
                    mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
                    parts.append(f"({x})*{mono}" if mono else f"({x})")
            return " + ".join(parts)
        out = []
        for k in range(len(self.c) - 1, -1, -1):
            x = self.c[k]
            if x:
                mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
                out.append(_fmt_term(x, mono, not out))
        return "".join(out)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"UniPoly({self.to_text()!r})"


# ---------------------------------------------------------------- univariate algorithms

def poly_gcd(p, q):
    """Monic gcd; gcd(p, 0) = monic(p), gcd(0, 0) = 0."""
    a, b = p, q
    while b:
        a, b = b, a.divmod(b)[1]
        if b:
            b = b.monic()
    return a.monic()


def is_separable(p):
    if not p:
        raise ValueError("separability of the zero polynomial")
    return poly_gcd(p, p.derivative()).degree() == 0


def squarefree(p):
    """Yun's squarefree decomposition.

    Returns ``(c, [(f1, 1), (f2, 2), ...])`` with monic squarefree, pairwise
    coprime f_i and p = c * prod f_i^i.  Factors equal to 1 are omitted.
    """
    if not p:
        raise ValueError("squarefree decomposition of zero")
    c = p.lc()
    f = p.monic()
    out = []
    if f.degree() == 0:
        return c, out
    d = f.derivative()
    a = poly_gcd(f, d)
    b = f.exquo(a)
    cc = d.exquo(a)
    cc = cc - b.derivative()
    i = 1
    while b.degree() > 0:
        g = poly_gcd(b, cc)
        b2 = b.exquo(g)
        if g.degree() > 0:
            out.append((g, i))
        cc = cc.exquo(g) - b2.derivative()
        b = b2
        i += 1
    return c, out


def is_square_up_to_constant(p):
    """True iff every root of p (over the algebraic closure) has even multiplicity."""
    _, facs = squarefree(p)
    return all(m % 2 == 0 for _, m in facs)


def poly_sqrt(p):
    """Return s with s*s == p over the coefficient field, or None.

    Works by matching coefficients from the top degree down; the candidate
    is verified by squaring.
    """
    if not p:
        return UniPoly()
    n = p.degree()
    if n % 2:
        return None
    m = n // 2
    top = _coeff_sqrt(p.lc())
    if top is None:
        return None
    s = [0] * (m + 1)
    s[m] = top
    two_top = 2 * top
    for i in range(1, m + 1):
        acc = p[n - i]
        for a in range(m - i + 1, m):
            b = n - i - a
            if m - i < b < m + 1 and b != m:
                acc = acc - s[a] * s[b]
        s[m - i] = qdiv(acc, two_top) if _is_q(acc) and _is_q(two_top) else acc / two_top
    cand = UniPoly(s)
    return cand if cand * cand == p else None


def multiplicity(p, f):
    """Largest e with f^e | p; +inf for p = 0."""
    if f.degree() < 1:
        raise ValueError("root factor must have positive degree")
    if not p:
        return math.inf
    e = 0
    while True:
        q, r = p.divmod(f)
        if r:
            return e
        p = q
        e += 1


def solve_linear_system(rows, rhs):
    """Solve A x = b over Q by Gauss-Jordan elimination.

    Returns ``(x, nullity)`` where x is one solution (free variables set to 0)
    or None if inconsistent, and nullity is the kernel dimension of A.
    """
    ncols = len(rows[0]) if rows else 0
    m = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(col)
        r += 1
        if r == len(m):
            break
    for i in range(r, len(m)):
        if m[i][-1]:
            return None, ncols - len(piv_cols)
    x = [0] * ncols
    for i, col in enumerate(piv_cols):
        x[col] = qnorm(m[i][-1])
    return x, ncols - len(piv_cols)


# ---------------------------------------------------------------- MultiPoly

_BITS = 64
_MASK = (1 << _BITS) - 1


class PolyRing:
    """Polynomial ring Q[v1, ..., vn] with ordered named indeterminates.

    Exponent vectors are packed into one integer with v1 most significant,
    so integer order on keys is the lexicographic monomial order.
    """

    def __init__(self, names):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate indeterminate names")
        self.n = len(self.names)
        self.index = {v: i for i, v in enumerate(self.names)}
        self._units = [1 << (_BITS * (self.n - 1 - i)) for i in range(self.n)]

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({list(self.names)})"

    def pack(self, exps):
        k = 0
        for e in exps:
            if e < 0:
                raise ValueError("negative exponent in a polynomial ring")
            k = (k << _BITS) | e
        return k

    def unpack(self, k):
        out = [0] * self.n
        for i in range(self.n - 1, -1, -1):
            out[i] = k & _MASK
            k >>= _BITS
        return tuple(out)

    def unit(self, name):
        return self._units[self.index[name]]

    def exp_of(self, k, name):
        return (k >> (_BITS * (self.n - 1 - self.index[name]))) & _MASK

    def gen(self, name):
        return MultiPoly(self, {self.unit(name): 1})

    def gens(self):
        return [self.gen(v) for v in self.names]

    def const(self, c):
        c = qnorm(c)
        return MultiPoly(self, {0: c} if c else {})

    def zero(self):
        return MultiPoly(self, {})

    def one(self):
        return MultiPoly(self, {0: 1})

    def monomial(self, exps, c=1):
        c = qnorm(c)
        return MultiPoly(self, {self.pack(exps): c} if c else {})

    def parse(self, text):
        v = _eval_expr(text, {n: self.gen(n) for n in self.names})
        return v if isinstance(v, MultiPoly) else self.const(v)

    def from_unipoly(self, u, var):
        """Embed a rational UniPoly in ``var``."""
        unit = self.unit(var)
        return MultiPoly(self, {unit * k: c for k, c in enumerate(u.coeffs) if c})

    def embed(self, p):
        """Re-express p (over a ring whose names are a subset) in this ring."""
        if p.ring == self:
            return p
        src = p.ring
        pos = [self.index[v] for v in src.names]
        terms = {}
        for k, c in p.terms.items():
            e = [0] * self.n
            for i, x in zip(pos, src.unpack(k)):
                e[i] = x
            terms[self.pack(e)] = c
        return MultiPoly(self, terms)


class MultiPoly:
    """Sparse polynomial over Q in the indeterminates of a :class:`PolyRing`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # construction helpers
    def _new(self, terms):
        return MultiPoly(self.ring, terms)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError("polynomials over different rings")
            return other
        if _is_q(other):
            return self.ring.const(other)
        return NotImplemented

    # predicates
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms.get(0, 0)

    def is_monomial(self):
        return len(self.terms) == 1

    def __len__(self):
        return len(self.terms)

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        for k, c in o.terms.items():
            v = qnorm(t.get(k, 0) + c)
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        for k, c in o.terms.items():
            v = qnorm(t.get(k, 0) - c)
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return self._new(t)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = qnorm(c)
        if not c:
            return self._new({})
        return self._new({k: qnorm(v * c) for k, v in self.terms.items()})

    def __mul__(self, other):
        if _is_q(other):
            return self.scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.terms, o.terms
        if not a or not b:
            return self._new({})
        if len(b) == 1:
            (kb, cb), = b.items()
            return self._new({k + kb: qnorm(c * cb) for k, c in a.items()})
        if len(a) == 1:
            (ka, ca), = a.items()
            return self._new({k + ka: qnorm(c * ca) for k, c in b.items()})
        da, va = _scale_to_int(list(a.values()))
        db, vb = _scale_to_int(list(b.values()))
        prod = sparse_mul(dict(zip(a.keys(), va)), dict(zip(b.keys(), vb)))
        den = da * db
        if den != 1:
            prod = {k: qnorm(Fraction(v, den)) for k, v in prod.items()}
        return self._new(prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_q(other):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / other)
        return self.exquo(other)

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power")
        if len(self.terms) == 1:
            (k, c), = self.terms.items()
            return self._new({k * e: qnorm(Fraction(c) ** e)})
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        if _is_q(other):
            return self.terms == ({0: qnorm(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # structure
    def exps(self):
        """Iterate (exponent tuple, coefficient) in descending lex order."""
        up = self.ring.unpack
        for k in sorted(self.terms, reverse=True):
            yield up(k), self.terms[k]

    def degree(self, var=None):
        """Degree in ``var`` (total degree if None); -1 for zero."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(self.ring.unpack(k)) for k in self.terms)
        i = self.ring.index[var]
        sh = _BITS * (self.ring.n - 1 - i)
        return max((k >> sh) & _MASK for k in self.terms)

    def vars_present(self):
        acc = [0] * self.ring.n
        for k in self.terms:
            for i, e in enumerate(self.ring.unpack(k)):
                if e:
                    acc[i] = 1
        return [v for v, f in zip(self.ring.names, acc) if f]

    def coeffs_in(self, var):
        """Map degree -> coefficient (a MultiPoly with ``var`` removed)."""
        sh = _BITS * (self.ring.n - 1 - self.ring.index[var])
        out = {}
        for k, c in self.terms.items():
            e = (k >> sh) & _MASK
            out.setdefault(e, {})[k - (e << sh)] = c
        return {e: self._new(t) for e, t in out.items()}

    def coeff(self, var, e):
        return self.coeffs_in(var).get(e, self.ring.zero())

    def lc_in(self, var):
        d = self.degree(var)
        return self.coeff(var, d)

    def leading_term(self):
        k = max(self.terms)
        return k, self.terms[k]

    def monomial_content(self):
        """Componentwise minimum exponent vector over the support."""
        if not self.terms:
            return (0,) * self.ring.n
        it = iter(self.terms)
        m = list(self.ring.unpack(next(it)))
        for k in it:
            for i, e in enumerate(self.ring.unpack(k)):
                if e < m[i]:
                    m[i] = e
        return tuple(m)

    def content(self):
        """Positive rational c such that self / c has coprime integer coefficients."""
        if not self.terms:
            return 0
        vals = [Fraction(c) for c in self.terms.values()]
        num = reduce(math.gcd, (v.numerator for v in vals))
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (v.denominator for v in vals))
        c = Fraction(num, den)
        if self.terms[max(self.terms)] < 0:
            c = -c
        return qnorm(c)

    def primitive(self):
        c = self.content()
        return self if c == 1 else self.scale(Fraction(1) / Fraction(c))

    def derivative(self, var):
        unit = self.ring.unit(var)
        sh = _BITS * (self.ring.n - 1 - self.ring.index[var])
        t = {}
        for k, c in self.terms.items():
            e = (k >> sh) & _MASK
            if e:
                t[k - unit] = qnorm(c * e)
        return self._new(t)

    def subs(self, values):
        """Substitute indeterminates by MultiPolys (same ring) or rationals."""
        out = self
        for var, val in values.items():
            if not isinstance(val, MultiPoly):
                val = self.ring.const(val)
            cs = out.coeffs_in(var)
            if not cs:
                return out
            acc = self.ring.zero()
            top = max(cs)
            for e in range(top, -1, -1):
                acc = acc * val
                if e in cs:
                    acc = acc + cs[e]
            out = acc
        return out

    def evaluate(self, values):
        """Evaluate at rational values for every indeterminate present."""
        acc = 0
        idx = [(self.ring.index[v], Fraction(x)) for v, x in values.items()]
        for k, c in self.terms.items():
            e = self.ring.unpack(k)
            t = Fraction(c)
            for i, x in idx:
                if e[i]:
                    t *= x ** e[i]
            if any(e[i] for i in range(self.ring.n) if i not in {j for j, _ in idx}):
                raise ValueError("value missing for an indeterminate")
            acc += t
        return qnorm(acc)

    def to_unipoly(self, var):
        """Convert a polynomial in ``var`` alone to UniPoly."""
        cs = self.coeffs_in(var)
        for c in cs.values():
            if not c.is_constant():
                raise ValueError(f"not a polynomial in {var} alone")
        if not cs:
            return UniPoly()
        return UniPoly([cs[e].constant_value() if e in cs else 0 for e in range(max(cs) + 1)])

    def divide_monomial(self, exps):
        k0 = self.ring.pack(exps)
        up = self.ring.unpack
        for k in self.terms:
            if any(a < b for a, b in zip(up(k), exps)):
                raise ValueError("monomial does not divide")
        return self._new({k - k0: c for k, c in self.terms.items()})

    def exquo(self, other):
        """Exact division; raises ValueError if other does not divide self."""
        o = self._coerce(other)
        if not o.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return self
        if len(o.terms) == 1:
            (kb, cb), = o.terms.items()
            eb = self.ring.unpack(kb)
            return self.divide_monomial(eb).scale(Fraction(1) / Fraction(cb))
        up = self.ring.unpack
        lb = max(o.terms)
        lcb = o.terms[lb]
        eb = up(lb)
        bterms = [(k, c) for k, c in o.terms.items() if k != lb]
        r = dict(self.terms)
        heap = [-k for k in r]
        heapq.heapify(heap)
        q = {}
        while heap:
            k = -heapq.heappop(heap)
            c = r.pop(k, None)
            if c is None:
                continue
            ek = up(k)
            if any(a < b for a, b in zip(ek, eb)):
                raise ValueError("inexact multivariate division")
            qk = k - lb
            qc = qdiv(c, lcb)
            q[qk] = qc
            for kb, cb in bterms:
                kk = qk + kb
                old = r.get(kk)
                v = qnorm((old if old is not None else 0) - qc * cb)
                if v:
                    if old is None:
                        heapq.heappush(heap, -kk)
                    r[kk] = v
                elif old is not None:
                    del r[kk]
        return self._new(q)

    def divides(self, other):
        try:
            other.exquo(self)
            return True
        except ValueError:
            return False

    # text
    def to_text(self):
        if not self.terms:
            return "0"
        out = []
        names = self.ring.names
        for e, c in self.exps():
            mono = "*".join(
                (v if x == 1 else f"{v}^{x}") for v, x in zip(names, e) if x)
            out.append(_fmt_term(c, mono, not out))
        return "".join(out)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"


# ---------------------------------------------------------------- multivariate algorithms

def _monic_lex(p):
    if not p.terms:
        return p
    return p.scale(Fraction(1) / Fraction(p.terms[max(p.terms)]))


def _content_in(p, var):
    return mpoly_gcd_many(list(p.coeffs_in(var).values()))


def _prem(a, b, var):
    db = b.degree(var)
    lcb = b.lc_in(var)
    v = a.ring.gen(var)
    r = a
    while r and r.degree(var) >= db:
        dr = r.degree(var)
        lcr = r.lc_in(var)
        r = r * lcb - lcr * b * v ** (dr - db)
    return r


def mpoly_gcd(a, b):
    """gcd over Q of two multivariate polynomials, normalized lex-monic."""
    ring = a.ring
    if not a:
        return _monic_lex(b)
    if not b:
        return _monic_lex(a)
    ma, mb = a.monomial_content(), b.monomial_content()
    m = tuple(min(x, y) for x, y in zip(ma, mb))
    a = a.divide_monomial(ma)
    b = b.divide_monomial(mb)
    mono = ring.monomial(m)
    if a.is_constant() or b.is_constant():
        return mono
    present = set(a.vars_present()) | set(b.vars_present())
    var = next(v for v in ring.names if v in present)
    if a.degree(var) <= 0:
        return mono * mpoly_gcd_many([a] + list(b.coeffs_in(var).values()))
    if b.degree(var) <= 0:
        return mono * mpoly_gcd_many([b] + list(a.coeffs_in(var).values()))
    ca, cb = _content_in(a, var), _content_in(b, var)
    c = mpoly_gcd(ca, cb)
    pa, pb = a.exquo(ca), b.exquo(cb)
    if pa.degree(var) < pb.degree(var):
        pa, pb = pb, pa
    while pb:
        r = _prem(pa, pb, var)
        pa = pb
        if not r:
            pb = r
        elif r.degree(var) <= 0:
            pa = ring.one()
            pb = ring.zero()
        else:
            pb = r.exquo(_content_in(r, var))
    g = pa.exquo(_content_in(pa, var)) if pa.degree(var) > 0 else ring.one()
    return _monic_lex(mono * c * g)


def mpoly_gcd_many(polys):
    nz = [p for p in polys if p]
    if not nz:
        return polys[0] if polys else None
    # constants end the search immediately
    for p in nz:
        if p.is_constant():
            return p.ring.one()
    nz.sort(key=len)
    g = nz[0]
    for p in nz[1:]:
        g = mpoly_gcd(g, p)
        if g.is_constant():
            return g.ring.one()
    return _monic_lex(g)


def mpoly_sqrt(p):
    """Square root of a multivariate polynomial over Q, or None."""
    ring = p.ring
    if not p:
        return p
    k, c = p.leading_term()
    e = ring.unpack(k)
    if any(x % 2 for x in e):
        return None
    rc = rational_sqrt(c)
    if rc is None:
        return None
    es = [x // 2 for x in e]
    ls = ring.pack(es)
    s = ring.monomial(es, rc)
    two_lc = 2 * rc
    # a genuine root has degree at most half of p in every variable
    caps = [p.degree(v) // 2 for v in ring.names]
    r = p - s * s
    while r:
        kr, cr = r.leading_term()
        er = ring.unpack(kr)
        et = [a - b for a, b in zip(er, es)]
        if any(x < 0 for x in et) or any(x > c for x, c in zip(et, caps)):
            return None
        kt = ring.pack(et)
        if kt >= ls:
            return None
        t = MultiPoly(ring, {kt: qdiv(cr, two_lc)})
        r = r - t * (s * 2 + t)
        s = s + t
    return s


def bareiss_det(matrix):
    """Fraction-free determinant of a square matrix of MultiPoly entries."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    ring = m[0][0].ring
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                if mik:
                    v = m[i][j] * pk - mik * m[k][j]
                else:
                    v = m[i][j] * pk
                if prev is not None and v:
                    v = v.exquo(prev)
                m[i][j] = v
        prev = pk
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def sylvester_matrix(p, q, var):
    m, n = p.degree(var), q.degree(var)
    cp, cq = p.coeffs_in(var), q.coeffs_in(var)
    zero = p.ring.zero()
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for d in range(m + 1):
            row[i + m - d] = cp.get(d, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for d in range(n + 1):
            row[i + n - d] = cq.get(d, zero)
        rows.append(row)
    return rows


def resultant(p, q, var):
    """Res_var(p, q) as the Bareiss determinant of the Sylvester matrix."""
    m, n = p.degree(var), q.degree(var)
    if m <= 0 and n <= 0:
        raise ValueError(f"{var} occurs in neither polynomial")
    if not p or not q:
        return p.ring.zero()
    if n == 0:
        return q ** m
    if m == 0:
        return p ** n
    return bareiss_det(sylvester_matrix(p, q, var))


# ---------------------------------------------------------------- parameter fields

class ParamField:
    """Rational function field Q(p1, ..., pk) in named parameters."""

    def __init__(self, names):
        self.ring = PolyRing(names)

    def __eq__(self, other):
        return isinstance(other, ParamField) and self.ring == other.ring

    def __hash__(self):
        return hash(("ParamField", self.ring))

    def __call__(self, value, den=None):
        if isinstance(value, ParamFraction):
            return value
        if isinstance(value, str):
            v = _eval_expr(value, {n: self.gen(n) for n in self.ring.names})
            return v if isinstance(v, ParamFraction) else self(v)
        num = value if isinstance(value, MultiPoly) else self.ring.const(value)
        d = self.ring.one() if den is None else (den if isinstance(den, MultiPoly) else self.ring.const(den))
        return ParamFraction(self, num, d)

    def gen(self, name):
        return ParamFraction(self, self.ring.gen(name), self.ring.one(), reduced=True)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)


class ParamFraction:
    """Element num/den of a :class:`ParamField`, kept reduced with lex-monic den."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den, reduced=False):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            if not num:
                den = field.ring.one()
            elif not den.is_constant():
                g = mpoly_gcd(num, den)
                if not g.is_constant():
                    num, den = num.exquo(g), den.exquo(g)
            lc = den.terms[max(den.terms)]
            if lc != 1:
                inv = Fraction(1) / Fraction(lc)
                num, den = num.scale(inv), den.scale(inv)
        self.field = field
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, ParamFraction):
            if other.field != self.field:
                raise ValueError("elements of different parameter fields")
            return other
        if _is_q(other):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return ParamFraction(self.field, self.num + o.num, self.den)
        return ParamFraction(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return ParamFraction(self.field, -self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ParamFraction(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("division by zero")
        return ParamFraction(self.field, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e):
        if e < 0:
            return ParamFraction(self.field, self.den ** -e, self.num ** -e)
        return ParamFraction(self.field, self.num ** e, self.den ** e, reduced=True)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den == 1 and self.num.is_constant():
            return hash(self.num.constant_value())
        return hash((self.num, self.den))

    def is_rational(self):
        return self.num.is_constant() and self.den.is_constant()

    def sqrt(self):
        n, d = mpoly_sqrt(self.num), mpoly_sqrt(self.den)
        if n is None or d is None:
            return None
        return ParamFraction(self.field, n, d)

    def to_text(self):
        if self.den == 1:
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"ParamFraction({self.to_text()!r})"
