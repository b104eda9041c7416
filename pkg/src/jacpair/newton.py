"""Supports, Newton polygons, directions and leading forms.

Points are pairs ``(a, b)`` with ``a`` an int or Fraction (the x-coordinate
a/l of a fractional support) and ``b`` an int.  All predicates are exact.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction

from .exactalg import qnorm
from .laurent import LaurentPoly

__all__ = [
    "Direction", "NewtonPolygon", "EdgeForm", "hull", "support_points", "v",
    "v_point", "leading_form", "st_en", "edge_dir", "angle_cmp", "angle_sort_key",
    "pred_succ", "in_interval", "corner_candidates_9_27", "render_ascii", "render_svg",
]


class Direction(tuple):
    """Primitive integer direction (rho, sigma)."""

    __slots__ = ()

    def __new__(cls, rho, sigma):
        rho, sigma = int(rho), int(sigma)
        if rho == 0 and sigma == 0:
            raise ValueError("zero direction")
        if math.gcd(rho, sigma) != 1:
            raise ValueError(f"direction ({rho},{sigma}) is not primitive")
        return super().__new__(cls, (rho, sigma))

    @classmethod
    def of(cls, rho, sigma):
        """Primitive direction proportional (with positive factor) to (rho, sigma)."""
        g = math.gcd(int(rho), int(sigma))
        if g == 0:
            raise ValueError("zero direction")
        return cls(rho // g, sigma // g)

    @property
    def rho(self):
        return self[0]

    @property
    def sigma(self):
        return self[1]

    def __neg__(self):
        return Direction(-self[0], -self[1])

    def __repr__(self):
        return f"Direction({self[0]}, {self[1]})"


def _pt(p):
    return (qnorm(Fraction(p[0])), int(p[1]))


def support_points(p):
    """Support of a LaurentPoly as points (i/l, j), or a point iterable as-is."""
    if isinstance(p, LaurentPoly):
        if not p:
            raise ValueError("support of the zero polynomial")
        return [(qnorm(Fraction(i, p.l)), j) for i, j in p.terms]
    pts = [_pt(q) for q in p]
    if not pts:
        raise ValueError("empty support")
    return pts


def v_point(d, pt):
    return qnorm(d[0] * Fraction(pt[0]) + d[1] * pt[1])


def v(d, p):
    """v_{rho,sigma}: maximum of rho*a + sigma*b over the support."""
    return max(v_point(d, q) for q in support_points(p))


def leading_form(d, p):
    """Sum of the terms of p attaining v_{rho,sigma}(p)."""
    if not p:
        raise ValueError("leading form of zero")
    l = p.l
    rho, sigma = d
    # scale by l to stay in integers
    best = max(rho * i + sigma * l * j for i, j in p.terms)
    return LaurentPoly({k: c for k, c in p.terms.items()
                        if rho * k[0] + sigma * l * k[1] == best}, l)


def _edge_functional(d, pt):
    return -d[1] * Fraction(pt[0]) + d[0] * pt[1]


def st_en(d, p):
    """(st, en) of the leading form; en - st is a nonnegative multiple of (-sigma, rho)."""
    pts = support_points(leading_form(d, p) if isinstance(p, LaurentPoly) else p)
    if not isinstance(p, LaurentPoly):
        top = max(v_point(d, q) for q in pts)
        pts = [q for q in pts if v_point(d, q) == top]
    st = min(pts, key=lambda q: _edge_functional(d, q))
    en = max(pts, key=lambda q: _edge_functional(d, q))
    return st, en


# ---------------------------------------------------------------- angular order

def _half(d):
    """0 for angles in (-pi, 0], 1 for angles in (0, pi]."""
    r, s = d
    if s < 0 or (s == 0 and r > 0):
        return 0
    return 1


def angle_cmp(a, b):
    """Compare angles of a and b in (-pi, pi]; returns -1, 0 or 1."""
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    cr = a[0] * b[1] - a[1] * b[0]
    if cr > 0:
        return -1
    if cr < 0:
        return 1
    return 0


class _AngleKey:
    __slots__ = ("d",)

    def __init__(self, d):
        self.d = d

    def __lt__(self, other):
        return angle_cmp(self.d, other.d) < 0

    def __eq__(self, other):
        return angle_cmp(self.d, other.d) == 0


def angle_sort_key(d):
    return _AngleKey(d)


def in_interval(d, lo, hi):
    """d in the open-closed angular interval ]lo, hi]."""
    return angle_cmp(lo, d) < 0 and angle_cmp(d, hi) <= 0


# ---------------------------------------------------------------- polygons

def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


class NewtonPolygon:
    """Convex polygon with counterclockwise vertices (possibly a segment or point)."""

    def __init__(self, vertices):
        self.vertices = [_pt(p) for p in vertices]

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, NewtonPolygon):
            return NotImplemented
        return set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash(frozenset(self.vertices))

    def vertex_set(self):
        return set(self.vertices)

    def scaled(self, f):
        return NewtonPolygon([(qnorm(Fraction(a) * f), qnorm(b * f)) for a, b in self.vertices])

    def edges(self):
        """(start, end, outward direction) for each edge, counterclockwise."""
        vs = self.vertices
        n = len(vs)
        if n < 2:
            return []
        if n == 2:
            # a segment has both normals as edge directions
            a, b = vs
            d = edge_dir(a, b)
            return [(a, b, d), (b, a, -d)]
        out = []
        for k in range(n):
            a, b = vs[k], vs[(k + 1) % n]
            out.append((a, b, edge_dir(a, b, outward_of=self)))
        return out

    def edge_directions(self):
        return [e[2] for e in self.edges()]

    def contains(self, pt):
        pt = _pt(pt)
        vs = self.vertices
        if len(vs) == 1:
            return pt == vs[0]
        if len(vs) == 2:
            a, b = vs
            return _cross(a, b, pt) == 0 and min(a, b) <= pt <= max(a, b)
        return all(_cross(vs[k], vs[(k + 1) % len(vs)], pt) >= 0 for k in range(len(vs)))

    def to_json_obj(self, l=1):
        rows = []
        for a, b in self.vertices:
            f = Fraction(a)
            rows.append([f.numerator, f.denominator, b])
        return {"l": l, "vertices": rows}

    def to_json(self):
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj):
        return cls([(Fraction(n, d), b) for n, d, b in obj["vertices"]])

    def __repr__(self):
        return f"NewtonPolygon({self.vertices})"


def hull(support):
    """Convex hull via monotone chain; collinear points are dropped."""
    pts = sorted(set(support_points(support)))
    if len(pts) <= 2:
        return NewtonPolygon(pts)
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    verts = lower[:-1] + upper[:-1]
    if len(verts) == 2 and verts[0] == verts[1]:
        verts = verts[:1]
    return NewtonPolygon(verts)


def edge_dir(a, b, outward_of=None):
    """Primitive (rho, sigma) with v(a) = v(b).

    Standalone: rho > 0 (sigma > 0 when rho = 0).  With ``outward_of`` the
    sign makes the direction an outward normal of that polygon.
    """
    a, b = _pt(a), _pt(b)
    if a == b:
        raise ValueError("edge endpoints coincide")
    dx = Fraction(b[0]) - Fraction(a[0])
    dy = Fraction(b[1] - a[1])
    den = math.lcm(dx.denominator, dy.denominator)
    ix, iy = int(dx * den), int(dy * den)
    d = Direction.of(iy, -ix)
    if outward_of is None:
        if d[0] < 0 or (d[0] == 0 and d[1] < 0):
            d = -d
        return d
    va = v_point(d, a)
    for p in outward_of.vertices:
        w = v_point(d, p)
        if w > va:
            return -d
        if w < va:
            return d
    return d


def pred_succ(poly, d):
    """(Pred, Succ): nearest edge directions strictly below/above d in angle."""
    if len(poly.vertices) < 2:
        raise ValueError("polygon needs at least two vertices")
    dirs = poly.edge_directions()
    below = [e for e in dirs if angle_cmp(e, d) < 0]
    above = [e for e in dirs if angle_cmp(e, d) > 0]
    if not below or not above:
        raise ValueError(f"no edge direction on one side of {tuple(d)}")
    pred = below[0]
    for e in below[1:]:
        if angle_cmp(e, pred) > 0:
            pred = e
    succ = above[0]
    for e in above[1:]:
        if angle_cmp(e, succ) < 0:
            succ = e
    return pred, succ


# ---------------------------------------------------------------- edge forms

class EdgeForm:
    """Leading form on an edge written as monomial * prod (x^u y^v - lam_i)^{m_i}."""

    def __init__(self, edge, monomial, factors, coeff=1):
        self.edge = (_pt(edge[0]), _pt(edge[1]))
        self.monomial = tuple(monomial)
        self.factors = [(tuple(uv), lam, m) for uv, lam, m in factors]
        self.coeff = coeff

    def form(self):
        i, j = self.monomial
        p = LaurentPoly.monomial(i, j, self.coeff)
        for (u, w), lam, m in self.factors:
            p = p * (LaurentPoly.monomial(u, w) - lam) ** m
        return p

    def check(self, d):
        """Support of the form lies on the edge and v_d is constant on it."""
        f = self.form()
        vals = {v_point(d, q) for q in support_points(f)}
        st, en = st_en(d, f)
        return len(vals) == 1 and {st, en} == set(self.edge)


# ---------------------------------------------------------------- divisibility table

_CANDIDATES_9_27 = [(-2, 0), (-1, 0), (1, 1), (2, 1), (4, 2), (5, 2), (7, 3), (10, 4), (13, 5)]


def corner_candidates_9_27():
    """Rows (a', b', 21b' - 8a', 13 gcd(21 - a', 8 - b'), passes)."""
    rows = []
    for a, b in _CANDIDATES_9_27:
        if a == b:
            # on the diagonal: excluded before the divisibility test
            continue
        lhs = 21 * b - 8 * a
        rhs = 13 * math.gcd(21 - a, 8 - b)
        rows.append({"point": (a, b), "lhs": lhs, "rhs": rhs, "passes": rhs % lhs == 0})
    return rows


# ---------------------------------------------------------------- renderers

def render_ascii(poly, support=()):
    """Small character plot: vertices '#', other support '.', grid ' '."""
    pts = list(poly.vertices) + [_pt(p) for p in support]
    xs = [Fraction(p[0]) for p in pts]
    ys = [p[1] for p in pts]
    x0, x1 = math.floor(min(xs)), math.ceil(max(xs))
    y0, y1 = min(ys), max(ys)
    verts = {(Fraction(a), b) for a, b in poly.vertices}
    sup = {(Fraction(a), b) for a, b in (_pt(p) for p in support)}
    lines = []
    for yy in range(y1, y0 - 1, -1):
        row = []
        for xx in range(x0, x1 + 1):
            key = (Fraction(xx), yy)
            row.append("#" if key in verts else "." if key in sup else
                       "+" if poly.contains((xx, yy)) else " ")
        lines.append(f"{yy:4d} " + "".join(row))
    return "\n".join(lines)


def render_svg(poly, scale=10, margin=10):
    vs = [(float(a), float(b)) for a, b in poly.vertices]
    xs, ys = [p[0] for p in vs], [p[1] for p in vs]
    w = (max(xs) - min(xs)) * scale + 2 * margin
    h = (max(ys) - min(ys)) * scale + 2 * margin

    def tr(p):
        return ((p[0] - min(xs)) * scale + margin, (max(ys) - p[1]) * scale + margin)

    path = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(tr, vs))
    dots = "".join(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2" fill="red"/>' for x, y in map(tr, vs))
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}">'
            f'<polygon points="{path}" fill="none" stroke="red"/>{dots}</svg>')
