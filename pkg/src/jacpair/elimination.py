"""Coefficient systems of D~^2 and Q~, their elimination and the final contradictions.

D~ = x^3 + x d1 + d0 + sum_{k>=1} x^-k dm<k> is expanded symbolically; the rows
(D~^2)_{-k} and (Q~)_{-j} with Q~ = D~^3 + D~^{-1} lam B^{lp} + x^-4 F4 B^{fp}
are regenerated (B = C3 for 9-27, B = y for 7-21).  Elimination isolates the
variables that occur linearly with constant coefficient, then removes dm3 and
dm2 by resultants, stripping contents after every step.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .approxroot import NINE27, SEVEN21, case_data, f1_for
from .exactalg import (MultiPoly, ParamField, PolyRing, UniPoly, is_separable,
                       is_square_up_to_constant, multiplicity, poly_gcd, poly_sqrt,
                       qnorm, resultant, squarefree)
from .laurent import TruncSeries, series_inverse, series_mul

__all__ = [
    "EquationSystem", "EliminationTrace", "Contradiction", "generate_system",
    "block_substitute", "eliminate", "principal_equation", "verify_identity_7_21",
    "auxiliary_relations_7_21", "contradiction_7_21", "contradiction_9_27",
    "soundness_spot_check", "replay_isolations", "strip", "DEPTH",
]

DEPTH = 11
D_NAMES = ["d1", "d0"] + [f"dm{k}" for k in range(1, DEPTH + 1)]
GEN_NAMES = D_NAMES + ["y", "lam", "F4", "C3"]

ISOLATION_ORDER = ["dm4", "dm5", "dm6", "dm7", "dm8", "dm10"]
RESULTANT_ORDER = ["dm3", "dm2"]
SELECTED = {"D2": [1, 2, 3, 4, 5, 7], "Q": [1, 2, 4]}
EXCLUDED = {"D2": [6, 8], "Q": [3]}


@dataclass
class EquationSystem:
    case_id: str
    ring: PolyRing
    rows: dict                         # label -> MultiPoly (symbolic blocks)
    selected: list                     # labels used for elimination
    substituted: dict = field(default_factory=dict)   # label -> MultiPoly over y
    beta_form: dict = field(default_factory=dict)     # label -> MultiPoly with symbol beta

    @property
    def unknowns(self):
        return list(D_NAMES)

    def equations(self):
        return [self.rows[k] for k in self.selected]


@dataclass
class EliminationTrace:
    case_id: str
    steps: list
    residuals: list
    final: MultiPoly
    ring: PolyRing
    final_raw: MultiPoly = None

    def to_json_obj(self):
        return {
            "case": self.case_id,
            "ring": list(self.ring.names),
            "steps": self.steps,
            "residuals": [r.to_text() for r in self.residuals],
            "final": self.final.to_text(),
        }


@dataclass
class Contradiction:
    kind: str
    witness: dict
    ok: bool

    def to_json_obj(self):
        return {"kind": self.kind, "ok": self.ok, "witness": _jsonable(self.witness)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (UniPoly, MultiPoly)):
        return x.to_text()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


# ---------------------------------------------------------------- generation

def _symbolic_D(ring):
    coeffs = {3: ring.one(), 1: ring.gen("d1"), 0: ring.gen("d0")}
    for k in range(1, DEPTH + 1):
        coeffs[-k] = ring.gen(f"dm{k}")
    return TruncSeries(coeffs, -DEPTH, 3)


def generate_system(case_id):
    """All rows (D~^2)_{-1..-8} and (Q~)_{-1..-4} with their selected subset."""
    cd = case_data(case_id)
    ring = PolyRing(GEN_NAMES)
    D = _symbolic_D(ring)
    D2 = series_mul(D, D)
    D3 = series_mul(D2, D)
    Dinv = series_inverse(D, -8)
    base = ring.gen("C3") if case_id == NINE27 else ring.gen("y")
    lam_block = ring.gen("lam") * base ** cd.lam_power
    F_block = ring.gen("F4") * base ** cd.F4_power
    rows = {}
    for k in range(1, 9):
        rows[f"D2_-{k}"] = D2[-k]
    for j in range(1, 5):
        q = D3[-j] + _as_poly(ring, Dinv.get(-j)) * lam_block
        if j == 4:
            q = q + F_block
        rows[f"Q_-{j}"] = q
    selected = [f"D2_-{k}" for k in SELECTED["D2"]] + [f"Q_-{j}" for j in SELECTED["Q"]]
    sys = EquationSystem(case_id, ring, rows, selected)
    sys.substituted = {k: block_substitute(case_id, ring, rows[k]) for k in rows}
    sys.beta_form = {k: _beta_form(case_id, rows[k]) for k in rows}
    return sys


def _as_poly(ring, c):
    if isinstance(c, MultiPoly):
        return c
    return ring.const(c)


def block_substitute(case_id, ring, p):
    """Replace F4^b B^a by f1^b B^(a - 3b), with B = C3 (9-27) or y (7-21)."""
    cd = case_data(case_id)
    f1 = f1_for(cd.C3)
    bvar = "C3" if case_id == NINE27 else "y"
    out_ring = ring
    f1m = out_ring.from_unipoly(f1, "y")
    c3m = out_ring.from_unipoly(cd.C3, "y")
    cache = {}
    acc = {}
    idx_f, idx_b = ring.index["F4"], ring.index[bvar]
    idx_c3 = ring.index["C3"]
    for e, c in p.exps():
        e = list(e)
        b, a = e[idx_f], e[idx_b]
        if b and a < 3 * b:
            raise ValueError("F4 block without enough C3 factors to clear it")
        e[idx_f] = 0
        if bvar == "C3":
            e[idx_c3] = 0
            key = (a - 3 * b, b)
        else:
            e[idx_b] = a - 3 * b
            key = (0, b)
        if key not in cache:
            cache[key] = c3m ** key[0] * f1m ** key[1]
        term = ring.monomial(e, c) * cache[key]
        for k, v in term.terms.items():
            w = qnorm(acc.get(k, 0) + v)
            if w:
                acc[k] = w
            else:
                acc.pop(k, None)
    return MultiPoly(ring, acc)


def _beta_form(case_id, p):
    """Rename the block F4 B^{fp} to a symbol beta (requires it to occur linearly)."""
    cd = case_data(case_id)
    ring2 = PolyRing(GEN_NAMES + ["beta"])
    bvar = "C3" if case_id == NINE27 else "y"
    q = ring2.embed(p)
    out = ring2.zero()
    for e, c in q.exps():
        e = list(e)
        if e[ring2.index["F4"]]:
            if e[ring2.index["F4"]] != 1 or e[ring2.index[bvar]] != cd.F4_power:
                raise ValueError("unexpected F4 block")
            e[ring2.index["F4"]] = 0
            e[ring2.index[bvar]] = 0
            e[ring2.index["beta"]] = 1
        out = out + ring2.monomial(e, c)
    return out


# ---------------------------------------------------------------- content stripping

def strip(p, protect=()):
    """Remove rational, Q[y]-coefficient and monomial content.

    Returns (primitive, record) with the removed pieces in text form.
    """
    ring = p.ring
    rec = {}
    if not p:
        return p, rec
    # monomial content
    mc = p.monomial_content()
    if any(mc):
        p = p.divide_monomial(mc)
        rec["monomial"] = ring.monomial(mc).to_text()
    # content as a polynomial in the non-y variables over Q[y]
    if "y" in ring.index:
        yi = ring.index["y"]
        groups = {}
        for e, c in p.exps():
            key = e[:yi] + (0,) + e[yi + 1:]
            groups.setdefault(key, {})[e[yi]] = c
        g = None
        for d in groups.values():
            u = UniPoly([d.get(i, 0) for i in range(max(d) + 1)])
            g = u if g is None else poly_gcd(g, u)
            if g.degree() == 0:
                break
        if g is not None and g.degree() > 0:
            gm = ring.from_unipoly(g.monic(), "y")
            p = p.exquo(gm)
            rec["y_content"] = g.monic().to_text()
    c = p.content()
    if c != 1:
        p = p.scale(Fraction(1) / Fraction(c))
        rec["rational"] = str(c)
    return p, rec


# ---------------------------------------------------------------- elimination

def _elim_ring(polys):
    used = set()
    for p in polys:
        used.update(p.vars_present())
    names = [n for n in p.ring.names if n in used]
    return PolyRing(names)


def _linear_coeff(p, var):
    cs = p.coeffs_in(var)
    if max(cs) != 1:
        return None
    c = cs.get(1)
    if c is None or not c.is_constant():
        return None
    return c.constant_value(), cs.get(0, p.ring.zero())


def eliminate(sys, mode="substituted", resultant_order=None):
    """Isolate linear variables, then eliminate by resultants.

    ``mode`` is "substituted" (F4 blocks replaced by polynomials in y) or
    "beta" (the block kept as a symbol beta).
    """
    src = sys.substituted if mode == "substituted" else sys.beta_form
    eqs = {k: src[k] for k in sys.selected}
    ring = _elim_ring(list(eqs.values()))
    eqs = {k: ring.embed(_shrink(v, ring)) for k, v in eqs.items()}
    steps = []
    isolated = {}
    for var in ISOLATION_ORDER:
        choice = None
        for label in sorted(eqs, key=_row_order):
            if not label.startswith("D2"):
                continue
            lin = _linear_coeff(eqs[label], var) if var in eqs[label].vars_present() else None
            if lin is not None:
                choice = (label, lin)
                break
        if choice is None:
            raise ValueError(f"no row isolates {var} linearly")
        label, (coef, rest) = choice
        value = rest.scale(Fraction(-1) / Fraction(coef))
        isolated[var] = (label, value)
        del eqs[label]
        for k in eqs:
            if var in eqs[k].vars_present():
                eqs[k] = eqs[k].subs({var: value})
        steps.append({"kind": "linear-isolation", "variable": var, "inputs": [label],
                      "output": value.to_text(), "stripped_content": {}})
    residuals = []
    for label in sorted(eqs, key=_row_order):
        r, rec = strip(eqs[label])
        residuals.append(r)
        steps.append({"kind": "residual", "variable": None, "inputs": [label],
                      "output": r.to_text(), "stripped_content": rec})
    orders = [resultant_order or RESULTANT_ORDER]
    orders += [list(o) for o in itertools.permutations(RESULTANT_ORDER) if list(o) != orders[0]]
    last_err = None
    for order in orders:
        try:
            final, rsteps, raw = _resultant_chain(residuals, order)
            break
        except ZeroDivisionError as exc:
            last_err = exc
    else:
        raise ValueError(f"every elimination order produced a zero resultant: {last_err}")
    steps.extend(rsteps)
    trace = EliminationTrace(sys.case_id, steps, residuals, final, ring, raw)
    trace.isolated = isolated
    return trace


def _shrink(p, ring):
    names = set(ring.names)
    for v in p.vars_present():
        if v not in names:
            raise ValueError(f"unexpected variable {v}")
    out = {}
    for e, c in p.exps():
        sub = [x for n, x in zip(p.ring.names, e) if n in names]
        out[ring.pack(sub)] = c
    return MultiPoly(ring, out)


def _row_order(label):
    kind, idx = label.split("_")
    return (0 if kind == "D2" else 1, -int(idx))


def _pivot_key(p, var):
    return (p.degree(var), len(p))


def _resultant_chain(polys, order):
    steps = []
    current = list(polys)
    raw = None
    for var in order:
        involved = [p for p in current if var in p.vars_present()]
        others = [p for p in current if var not in p.vars_present()]
        if len(involved) < 2:
            raise ZeroDivisionError(f"not enough equations in {var}")
        pivot = min(involved, key=lambda p: _pivot_key(p, var))
        nxt = list(others)
        for p in involved:
            if p is pivot:
                continue
            r = resultant(pivot, p, var)
            if not r:
                raise ZeroDivisionError(f"zero resultant in {var}")
            raw = r
            rp, rec = strip(r)
            steps.append({"kind": "resultant", "variable": var,
                          "inputs": [pivot.to_text(), p.to_text()],
                          "output": rp.to_text(), "stripped_content": rec})
            nxt.append(rp)
        current = nxt
    if len(current) != 1:
        raise ZeroDivisionError("elimination did not end with a single polynomial")
    return current[0], steps, raw


def replay_isolations(sys, trace, mode="substituted"):
    """Substituting each isolated value back into its source row gives 0."""
    src = sys.substituted if mode == "substituted" else sys.beta_form
    ring = trace.ring
    ok = True
    assigned = {}
    for var in ISOLATION_ORDER:
        label, value = trace.isolated[var]
        row = ring.embed(_shrink(src[label], ring))
        for v, val in assigned.items():
            if v in row.vars_present():
                row = row.subs({v: val})
        ok = ok and not row.subs({var: value})
        assigned[var] = value
    return ok


# ---------------------------------------------------------------- principal equations

def principal_equation(case_id, ring=None):
    """Reference principal equation with the F4 blocks cleared into y-polynomials."""
    cd = case_data(case_id)
    f1 = f1_for(cd.C3)
    ring = ring or PolyRing(["d1", "d0", "dm1", "y"])
    d1, d0, dm1 = ring.gen("d1"), ring.gen("d0"), ring.gen("dm1")
    if case_id == NINE27:
        beta = ring.from_unipoly(cd.C3 ** 20 * f1, "y")        # C3^23 F4
        beta3 = ring.from_unipoly(cd.C3 ** 60 * f1 ** 3, "y")  # C3^69 F4^3
    else:
        beta = ring.from_unipoly(UniPoly.monomial(7) * f1, "y")   # y^10 F4
        beta3 = beta ** 3
    return d1 * dm1 ** 6 * beta * 18 + beta3 * 8 + d0 * dm1 ** 9 * 27


def principal_equation_beta(ring):
    d1, d0, dm1, b = (ring.gen(n) for n in ("d1", "d0", "dm1", "beta"))
    return d1 * dm1 ** 6 * b * 18 + b ** 3 * 8 + d0 * dm1 ** 9 * 27


# ---------------------------------------------------------------- 7-21 identities

def verify_identity_7_21(drop_lambda=False):
    """2 Q~_{-3} - 3(D2_{-6} + d1 D2_{-4} + d0 D2_{-3} + dm1 D2_{-2} + dm2 D2_{-1})."""
    sys = generate_system(SEVEN21)
    ring = sys.ring
    r = sys.rows
    g = ring.gen
    comb = r["Q_-3"] * 2 - (r["D2_-6"] + g("d1") * r["D2_-4"] + g("d0") * r["D2_-3"]
                            + g("dm1") * r["D2_-2"] + g("dm2") * r["D2_-1"]) * 3
    expected = ring.parse("-dm1^3 - 6*d0*dm1*dm2 - 3*d1*dm2^2 + 3*dm3^2 + 2*lam*y^8")
    if drop_lambda:
        expected = expected - ring.parse("2*lam*y^8")
    return comb == expected


def auxiliary_relations_7_21(trace=None):
    """Reduce the residuals to 3 dm1^2 dm2 = y^9 and 2 dm3 y^9 = 3 d0 dm1^4."""
    if trace is None:
        trace = eliminate(generate_system(SEVEN21))
    ring = trace.ring
    E = {}
    for r in trace.residuals:
        vs = set(r.vars_present())
        E[_classify_residual(vs)] = r
    e1, e2, e3 = E["E1"], E["E2"], E["E3"]
    dm1 = ring.gen("dm1")
    # E1 and E2 are linear in d1 and d0 with coefficient c*dm1^2
    sol = {}
    for e, var in ((e1, "d1"), (e2, "d0")):
        cs = e.coeffs_in(var)
        lead = cs[1]
        if not lead.is_monomial():
            raise ValueError("unexpected residual shape")
        sol[var] = (-cs.get(0, ring.zero()), lead)
    # dm1^2 * E3 with d1, d0 replaced by their quotients
    cs = (e3 * dm1 ** 2).coeffs_in("d1")
    acc = cs.get(0, ring.zero())
    if 1 in cs:
        num, den = sol["d1"]
        acc = acc + cs[1].exquo(den) * num
    cs = acc.coeffs_in("d0")
    acc = cs.get(0, ring.zero())
    if 1 in cs:
        num, den = sol["d0"]
        acc = acc + cs[1].exquo(den) * num
    reduced, _ = strip(acc)
    y = ring.gen("y")
    rel1 = ring.gen("dm1") ** 2 * ring.gen("dm2") * 3 - y ** 9
    # second relation: substitute y^9 = 3 dm1^2 dm2 into 2 dm3 y^9 - 3 d0 dm1^4 and use E2
    rel2_lhs = ring.gen("dm3") * 2 * (ring.gen("dm1") ** 2 * ring.gen("dm2") * 3) - \
        ring.gen("d0") * ring.gen("dm1") ** 4 * 3
    rel2_ok = _is_multiple(rel2_lhs, e2)
    return {
        "reduced_E3": reduced.to_text(),
        "3*dm1^2*dm2 = y^9": _is_multiple(reduced, rel1),
        "2*dm3*y^9 = 3*d0*dm1^4": rel2_ok,
        "ok": _is_multiple(reduced, rel1) and rel2_ok,
    }


def _is_multiple(a, b):
    """a = c * b * m for a rational c and a monomial m."""
    if not a or not b:
        return not a and not b
    pa, _ = strip(a)
    pb, _ = strip(b)
    return pa == pb


def _classify_residual(vs):
    if "beta" in vs or "y" in vs:
        return "E3"
    if "d1" in vs:
        return "E1"
    return "E2"


# ---------------------------------------------------------------- soundness

def soundness_spot_check(trace_beta, trials=50, seed=0):
    """Random points on the residual variety satisfy the principal equation.

    Works on the beta-form trace: dm1, dm2, dm3 random; d1, d0, beta solved
    from the three linear residuals.
    """
    rng = random.Random(seed)
    ring = trace_beta.ring
    E = {}
    for r in trace_beta.residuals:
        E[_classify_residual(set(r.vars_present()))] = r
    fails = 0
    for _ in range(trials):
        vals = {n: Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))
                for n in ("dm1", "dm2", "dm3")}
        for var, key in (("d1", "E1"), ("d0", "E2"), ("beta", "E3")):
            e = E[key]
            for v, x in vals.items():
                if v in e.vars_present():
                    e = e.subs({v: x})
            cs = e.coeffs_in(var)
            a = cs[1].constant_value()
            b = cs.get(0, ring.zero())
            b = b.constant_value() if b else 0
            vals[var] = Fraction(-b) / Fraction(a)
        f = trace_beta.final
        for v, x in vals.items():
            if v in f.vars_present():
                f = f.subs({v: x})
        if f:
            fails += 1
    return fails == 0


# ---------------------------------------------------------------- 7-21 contradiction

def contradiction_7_21(principal=None, deg_d1=6, deg_d0=9, k_range=range(0, 13)):
    """NOT_A_SQUARE certificate for the 7-21 case."""
    ring = PolyRing(["d1", "d0", "dm1", "y"])
    if principal is None:
        principal = principal_equation(SEVEN21, ring)
    principal, _ = strip(ring.embed(_shrink(principal, ring)) if principal.ring != ring else principal)
    expected, _ = strip(ring.parse("9*y^9*d1*dm1^6 + y^27 + 27*d0*dm1^9"))
    w = {"principal_matches": principal == expected}
    # terms not divisible by dm1^6
    free = [(e, c) for e, c in principal.exps() if e[2] < 6]
    w["terms_without_dm1^6"] = [ring.monomial(e, c).to_text() for e, c in free]
    only_y = len(free) == 1 and all(x == 0 for i, x in enumerate(free[0][0]) if i != 3)
    w["dm1_monomial"] = only_y
    # degree balance for dm1 = alpha y^k
    degs = {}
    balanced = []
    for k in k_range:
        t = (9 + deg_d1 + 6 * k, 27, deg_d0 + 9 * k)
        degs[k] = t
        if sorted(t)[-1] == sorted(t)[-2]:
            balanced.append(k)
    w["term_degrees"] = degs
    w["balanced_k"] = balanced
    k_ok = balanced == [2]
    # substitution into the identity over Q(alpha, lam, d0, y)
    K = ParamField(["alpha", "lam", "d0", "y"])
    al, lam, d0, y = (K.gen(n) for n in ("alpha", "lam", "d0", "y"))
    dm1 = al * y ** 2
    d1 = (d0 * dm1 ** 9 * (-27) - y ** 27) / (dm1 ** 6 * y ** 9 * 9)
    dm2 = y ** 9 / (dm1 ** 2 * 3)
    dm3 = d0 * dm1 ** 4 * 3 / (y ** 9 * 2)
    ident = -dm1 ** 3 - d0 * dm1 * dm2 * 6 - d1 * dm2 ** 2 * 3 + dm3 ** 2 * 3 + lam * y ** 8 * 2
    lhs = (al ** 9 * d0 * 27 - y ** 9 * 2) ** 2 / (al ** 10 * 108)
    rhs = al ** 3 * y ** 8 - lam * y ** 10 * 2
    w["d_m2"] = dm2.to_text()
    reduction_ok = ident * y ** 2 == lhs - rhs
    w["identity_times_y^2 == lhs - rhs"] = reduction_ok
    # right side as a polynomial in y over Q(alpha, lam)
    F = ParamField(["alpha", "lam"])
    a2, l2 = F.gen("alpha"), F.gen("lam")
    rhs_y = UniPoly([0] * 8 + [a2 ** 3, 0, l2 * (-2)])
    sq = poly_sqrt(rhs_y)
    _, facs = squarefree(rhs_y)
    w["rhs"] = "alpha^3*y^8 - 2*lam*y^10"
    w["poly_sqrt"] = None if sq is None else sq.to_text()
    w["squarefree_multiplicities"] = [(f.to_text(), m) for f, m in facs]
    not_square = sq is None and not is_square_up_to_constant(rhs_y)
    ok = w["principal_matches"] and only_y and k_ok and reduction_ok and not_square
    return Contradiction("NOT_A_SQUARE", w, ok)


# ---------------------------------------------------------------- 9-27 contradiction

def contradiction_9_27(principal=None, bounds=None, k_max=11):
    """MULTIPLICITY / DEGREE certificate for the 9-27 case.

    ``bounds`` carries deg/ord data of d1, d0, dm1 (from verify_D_valuations);
    the reduced degree bounds for the d-check variables are derived from it.
    """
    cd = case_data(NINE27)
    C3 = cd.C3
    f1 = f1_for(C3)
    yy = UniPoly.monomial(1)
    y1 = UniPoly([1, 1])
    g = f1.exquo(UniPoly.monomial(9) * y1 ** 2)
    ring = PolyRing(["d1", "d0", "dm1", "y"])
    if principal is None:
        principal = principal_equation(NINE27, ring)
    else:
        principal = _shrink(principal, ring) if principal.ring != ring else principal
    if bounds is None:
        raise ValueError("degree and order bounds are required")
    o1, o0, om1 = bounds["d_ord_min"][1], bounds["d_ord_min"][0], bounds["d_ord_min"][-1]
    dg1, dg0 = bounds["d_deg_max"][1], bounds["d_deg_max"][0]
    w = {"orders": {"d1": o1, "d0": o0, "dm1": om1}}
    # substitute d = y^o * d~ and find the common power of y
    R2 = PolyRing(["t1", "t0", "tm1", "y"])
    Y = R2.gen("y")
    sub = {"d1": Y ** o1 * R2.gen("t1"), "d0": Y ** o0 * R2.gen("t0"), "dm1": Y ** om1 * R2.gen("tm1")}
    lifted = R2.embed(_rename(principal, R2, {"d1": "t1", "d0": "t0", "dm1": "tm1"}))
    lifted = lifted.subs({"t1": sub["d1"], "t0": sub["d0"], "tm1": sub["dm1"]})
    # split by d-monomial type: the three terms of the principal equation
    parts = {}
    for e, c in lifted.exps():
        parts.setdefault(e[:3], []).append((e, c))
    term_orders = {R2.monomial(list(k) + [0]).to_text(): min(e[3] for e, _ in v) for k, v in parts.items()}
    w["term_y_orders"] = term_orders
    common = min(term_orders.values())
    w["common_y_power"] = common
    reduced = lifted.divide_monomial((0, 0, 0, common))
    gm = R2.from_unipoly(g, "y")
    u = R2.from_unipoly(y1, "y")
    t1, t0, tm1 = R2.gen("t1"), R2.gen("t0"), R2.gen("tm1")
    expected = u ** 22 * t1 * tm1 ** 6 * gm * 18 + u ** 66 * gm ** 3 * 8 + t0 * tm1 ** 9 * 27
    pr, _ = strip(reduced)
    pe, _ = strip(expected)
    w["reduced_matches"] = pr == pe
    # g data
    w["g"] = g.to_text()
    g_ok = is_separable(g) and g(0) != 0 and g(-1) != 0
    w["g_separable_and_coprime_to_y(y+1)"] = g_ok
    # dm1~^6 divides (y+1)^66 g^3: only y+1 has multiplicity >= 6
    mid = y1 ** 66 * g ** 3 * 8
    _, facs = squarefree(mid)
    allowed = [(f.to_text(), m) for f, m in facs if m >= 6]
    w["factors_with_multiplicity_ge_6"] = allowed
    only_y1 = len(allowed) == 1 and allowed[0][0] == "y + 1"
    kmax_possible = multiplicity(mid, y1) // 6
    w["max_k"] = kmax_possible
    # reduced degree bounds
    dt1, dt0 = dg1 - o1, dg0 - o0
    w["deg_bounds_reduced"] = {"t1": dt1, "t0": dt0}
    mult_rows, deg_rows = {}, {}
    all_ok = True
    for k in range(0, min(k_max, kmax_possible) + 1):
        if k >= 8:
            m1 = 22 + 6 * k            # lower bound from the factor (y+1)^{22} tm1^6
            m2 = multiplicity(mid, y1)
            m3 = 9 * k
            good = m2 < m1 and m2 < m3
            mult_rows[k] = {"term1_min": m1, "term2": m2, "term3_min": m3, "ok": good}
        else:
            b1 = 22 + dt1 + 6 * k + g.degree()
            b2 = mid.degree()
            b3 = dt0 + 9 * k
            good = b1 < b2 and b3 < b2
            deg_rows[k] = {"term1_max": b1, "term2": b2, "term3_max": b3, "ok": good}
        all_ok = all_ok and good
    w["multiplicity_witness"] = mult_rows
    w["degree_witness"] = deg_rows
    ok = (w["reduced_matches"] and common == 507 and g_ok and only_y1 and all_ok)
    return Contradiction("MULTIPLICITY+DEGREE", w, ok)


def _rename(p, ring, mapping):
    names = [mapping.get(n, n) for n in p.ring.names]
    out = {}
    for e, c in p.exps():
        ex = [0] * ring.n
        for n, x in zip(names, e):
            ex[ring.index[n]] = x
        out[ring.pack(ex)] = c
    return MultiPoly(ring, out)
