"""Case table, per-case pipelines and certificate reports."""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import approxroot as ar
from . import elimination as el
from .exactalg import UniPoly
from .laurent import LaurentPoly, RingMap, apply_map, bracket, bracket_scaling
from .newton import (Direction, EdgeForm, NewtonPolygon, corner_candidates_9_27, hull,
                     render_svg, st_en, v_point)
from .startpoints import candidate_data, possible_starting_points

__all__ = [
    "CaseSpec", "CertificateStep", "CaseReport", "TABLE", "list_cases", "run_case",
    "run_case_8_32", "run_reduction", "run_case_9_27", "run_case_9_24", "run_case_7_21",
    "REDUCTION_CASES", "default_seed",
]

DISCARDED_PRIOR = "DISCARDED_PRIOR"
DISCARDED_HERE = "DISCARDED_HERE"
OPEN = "OPEN"

MACHINE = "MACHINE_CHECKED"
EXTERNAL = "EXTERNAL"

CONTRADICTION = "CONTRADICTION"
REDUCED_TO = "REDUCED_TO"
VERDICT_OPEN = "OPEN"


@dataclass(frozen=True)
class CaseSpec:
    case_id: str
    A0: tuple
    mn: tuple
    max_deg: int
    status: str
    sources: str
    note: str = ""

    def to_dict(self):
        return {"id": self.case_id, "A0": list(self.A0), "mn": list(self.mn),
                "max_deg": self.max_deg, "status": self.status, "sources": self.sources,
                "note": self.note}


TABLE = [
    CaseSpec("4-12a", (4, 12), (3, 4), 64, DISCARDED_PRIOR, "GGV4 section 3.5; Moh; Heitmann"),
    CaseSpec("4-12b", (4, 12), (5, 7), 112, DISCARDED_PRIOR, "GGV4 section 3.5"),
    CaseSpec("5-20a", (5, 20), (2, 3), 75, DISCARDED_PRIOR, "GGV3 section 5"),
    CaseSpec("5-20b", (5, 20), (3, 2), 75, DISCARDED_PRIOR, "GGV3 section 5"),
    CaseSpec("7-21", (7, 21), (2, 3), 84, DISCARDED_HERE, "GGV6 Thm 7.3; elimination"),
    CaseSpec("8-24", (8, 24), (2, 3), 96, DISCARDED_PRIOR, "GGV5 Prop 6.1"),
    CaseSpec("8-28", (8, 28), (3, 2), 108, OPEN, "-",
             "one branch is the open (72,108) system, the other is discarded"),
    CaseSpec("8-32", (8, 32), (3, 2), 120, DISCARDED_HERE, "GGV2 Prop 3.29"),
    CaseSpec("9-24", (9, 24), (2, 3), 99, DISCARDED_HERE, "reduction; elimination"),
    CaseSpec("9-27", (9, 27), (2, 3), 108, DISCARDED_HERE, "reduction; elimination"),
]

ALIASES = {"72-108": "8-28", "120": "8-32", "84": "7-21", "99": "9-24"}


def list_cases():
    return list(TABLE)


def default_seed():
    import os
    return int(os.environ.get("JACPAIR_SEED", "0"))


# ---------------------------------------------------------------- reports

@dataclass
class CertificateStep:
    kind: str
    op: str
    description: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    citation: str = None
    passed: bool = True

    def to_json_obj(self):
        out = {"kind": self.kind, "op": self.op, "description": self.description,
               "inputs": _js(self.inputs), "outputs": _js(self.outputs)}
        if self.kind == MACHINE:
            out["passed"] = bool(self.passed)
        if self.citation:
            out["citation"] = self.citation
        return out


@dataclass
class CaseReport:
    case: str
    verdict: str
    steps: list
    seed: int = 0
    polygons: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(s.passed for s in self.steps if s.kind == MACHINE)

    def externals(self):
        return [s.citation for s in self.steps if s.kind == EXTERNAL]

    def to_json_obj(self):
        return {"case": self.case, "verdict": self.verdict, "seed": self.seed,
                "ok": self.ok, "steps": [s.to_json_obj() for s in self.steps],
                "external_audit": self.externals()}

    def to_json(self):
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=True)

    def to_text(self):
        lines = [f"case {self.case}: {self.verdict} (seed {self.seed})"]
        for i, s in enumerate(self.steps, 1):
            if s.kind == MACHINE:
                mark = "ok  " if s.passed else "FAIL"
                lines.append(f"{i:3d} [{mark}] {s.op}: {s.description}")
            else:
                lines.append(f"{i:3d} [ext ] {s.op}: {s.description} ({s.citation})")
        return "\n".join(lines)

    def write_svgs(self, directory):
        import os
        os.makedirs(directory, exist_ok=True)
        paths = []
        for name, poly in sorted(self.polygons.items()):
            path = os.path.join(directory, f"{self.case}_{name}.svg")
            with open(path, "w") as fh:
                fh.write(render_svg(poly))
            paths.append(path)
        return paths


def _js(x):
    if isinstance(x, dict):
        return {str(k): _js(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_js(v) for v in x]
        return sorted(items, key=str) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, NewtonPolygon):
        return sorted([_js(p) for p in x.vertices], key=str)
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if hasattr(x, "to_text"):
        return x.to_text()
    if isinstance(x, float):
        return "inf" if math.isinf(x) else x
    return str(x)


def _m(op, desc, passed, inputs=None, outputs=None):
    return CertificateStep(MACHINE, op, desc, inputs or {}, outputs or {}, None, bool(passed))


def _x(op, desc, citation, inputs=None, outputs=None):
    return CertificateStep(EXTERNAL, op, desc, inputs or {}, outputs or {}, citation, True)


# ---------------------------------------------------------------- random supports

def _lattice_points(poly):
    xs = [Fraction(a) for a, _ in poly.vertices]
    ys = [b for _, b in poly.vertices]
    out = []
    for j in range(min(ys), max(ys) + 1):
        for i in range(math.floor(min(xs)), math.ceil(max(xs)) + 1):
            if poly.contains((i, j)):
                out.append((i, j))
    return out


def random_with_corners(corners, rng, extra=12):
    """Laurent polynomial whose Newton polygon has exactly the given corners."""
    poly = hull(corners)
    pts = set(corners)
    lattice = _lattice_points(poly)
    pts.update(rng.sample(lattice, min(extra, len(lattice))))
    terms = {}
    for p in pts:
        c = 0
        while c == 0:
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        terms[p] = c
    return LaurentPoly(terms)


def _check_map(name, m, before, after, rng, seeds_ok=None):
    """Random pair with the ``before`` corners maps onto the ``after`` corners."""
    p = random_with_corners(before, rng)
    img = hull(apply_map(m, p).support())
    want = NewtonPolygon(after)
    return img == want, img


def _shear(lam, k):
    return RingMap.shear(lam, k)


def _rand_nonzero(rng):
    c = 0
    while c == 0:
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return c


def _edge_after(form, maps):
    p = form
    for m in maps:
        p = apply_map(m, p)
    return p


# ---------------------------------------------------------------- reductions

REDUCTION_CASES = (ar.NINE27, ar.NINE24, ar.EIGHT28, ar.SEVEN21)

# supports just before the final monomial map, scaled by the P and Q multipliers
_PRE = {
    ar.NINE27: {
        "final": ({(0, 0), (2, 1), (42, 16), (48, 18), (54, 18)},
                  {(0, 0), (-1, 0), (63, 24), (72, 27), (81, 27)}),
    },
    ar.NINE24: {
        "case 1": ({(0, 0), (2, 1), (42, 16), (48, 18), (36, 12)},
                   {(0, 0), (-1, 0), (63, 24), (72, 27), (54, 18)}),
        "case 2": ({(0, 0), (2, 1), (42, 16), (48, 18), (18, 6)},
                   {(0, 0), (-1, 0), (63, 24), (72, 27), (27, 9)}),
        "case 3": ({(0, 0), (2, 1), (42, 16), (48, 18)},
                   {(0, 0), (-1, 0), (63, 24), (72, 27)}),
    },
    ar.EIGHT28: {
        "case 1 (branch c)": ({(-1, 0), (0, 0), (32, 8), (56, 16), (48, 14)},
                              {(2, 1), (0, 0), (48, 12), (84, 24), (72, 21)}),
        "case 2 (branches a, b)": ({(-1, 0), (0, 0), (56, 16), (48, 14)},
                                   {(2, 1), (0, 0), (84, 24), (72, 21)}),
    },
    ar.SEVEN21: {
        "final": ({(-4, 0), (0, 0), (42, 14), (0, 2)},
                  {(-6, 0), (0, 0), (63, 21), (0, 3)}),
    },
}

# the proposition statements
_CLAIM = {
    ar.NINE27: {
        "final": ({(0, 0), (1, 1), (6, 16), (6, 18), (0, 18)},
                  {(0, 0), (1, 0), (9, 24), (9, 27), (0, 27)}),
    },
    ar.NINE24: {
        "case 1": ({(0, 0), (1, 1), (6, 16), (6, 18), (0, 12)},
                   {(0, 0), (1, 0), (9, 24), (9, 27), (0, 18)}),
        "case 2": ({(0, 0), (1, 1), (6, 16), (6, 18), (0, 6)},
                   {(0, 0), (1, 0), (9, 24), (9, 27), (0, 9)}),
        "case 3": ({(0, 0), (1, 1), (6, 16), (6, 18)},
                   {(0, 0), (1, 0), (9, 24), (9, 27)}),
    },
    ar.EIGHT28: {
        "case 1 (branch c)": ({(0, 0), (1, 0), (8, 14), (8, 16), (0, 8)},
                              {(0, 0), (2, 1), (12, 21), (12, 24), (0, 12)}),
        "case 2 (branches a, b)": ({(0, 0), (1, 0), (8, 14), (8, 16)},
                                   {(0, 0), (2, 1), (12, 21), (12, 24)}),
    },
    ar.SEVEN21: {
        "final": ({(0, 0), (4, 0), (6, 2), (0, 14)},
                  {(0, 0), (6, 0), (9, 3), (0, 21)}),
    },
}

_MAP_K = {ar.NINE27: 3, ar.NINE24: 3, ar.EIGHT28: 4, ar.SEVEN21: 3}
_BRACKET = {ar.NINE27: "x", ar.NINE24: "x", ar.EIGHT28: "x^2", ar.SEVEN21: "x"}


def run_reduction(case_id, seed=0):
    """Polygon reduction of a case, checked on random generic coefficients."""
    if case_id not in REDUCTION_CASES:
        raise ValueError(f"no reduction for {case_id!r}")
    rng = random.Random(f"{case_id}:{seed}")
    steps = []
    polys = {}
    steps.extend(_reduction_prelude(case_id, rng))
    k = _MAP_K[case_id]
    phi = RingMap.monomial(k)
    # chain rule: [phi P, phi Q] = phi([P, Q]) [phi x, phi y], with [phi x, phi y] = -x^(k-2)
    jf = phi.jacobian_factor
    want_jf = LaurentPoly.monomial(k - 2, 0, -1)
    p0 = random_with_corners({(0, 0), (1, 1), (3, 2)}, rng, 3)
    q0 = random_with_corners({(0, 0), (2, 0), (1, 3)}, rng, 3)
    lhs = bracket(apply_map(phi, p0), apply_map(phi, q0))
    rhs = bracket_scaling(phi, bracket(p0, q0))
    steps.append(_m("bracket_scaling", f"monomial map x->x^-1, y->x^{k}y scales the bracket by -x^{k - 2}",
                    jf == want_jf and lhs == rhs,
                    {"k": k}, {"jacobian_factor": jf.to_text()}))
    alternatives = {}
    for label, (pre_p, pre_q) in _PRE[case_id].items():
        claim_p, claim_q = _CLAIM[case_id][label]
        okp, np_ = _check_map(label, phi, pre_p, claim_p, rng)
        okq, nq = _check_map(label, phi, pre_q, claim_q, rng)
        steps.append(_m("apply_map+hull", f"{label}: corners after the monomial map",
                        okp and okq,
                        {"N(P) before": sorted(pre_p), "N(Q) before": sorted(pre_q)},
                        {"N(P)": np_, "N(Q)": nq}))
        alternatives[label] = (np_, nq)
        polys[f"{_slug(label)}_P"] = np_
        polys[f"{_slug(label)}_Q"] = nq
    steps.append(_x("support-before-map", "the supports before the final monomial map follow from the shears and cited shape results",
                    _SHAPE_CITATION[case_id]))
    verdict = REDUCED_TO
    rep = CaseReport(case_id, verdict, steps, seed, polys)
    rep.alternatives = alternatives
    return rep


_SHAPE_CITATION = {
    ar.NINE27: "GGV1 Cor 7.4; GGV1 Prop 8.2 with {(-k,0),(k+1,1)}",
    ar.NINE24: "GGV1 Cor 7.4; GGV2 Prop 3.12; GGV1 Prop 8.2",
    ar.EIGHT28: "GGV1 Cor 7.4; GGV6 Prop 2.5; GGV1 Prop 8.2",
    ar.SEVEN21: "GGV1 Cor 7.4; vdE Prop 10.2.6",
}


def _slug(s):
    return "".join(ch if ch.isalnum() else "_" for ch in s).strip("_")


def _reduction_prelude(case_id, rng):
    steps = []
    a1, a2 = _rand_nonzero(rng), _rand_nonzero(rng)
    swap = RingMap.swap()
    if case_id in (ar.NINE27, ar.NINE24):
        if case_id == ar.NINE27:
            form = EdgeForm(((9, 27), (0, 9)), (0, 9), [((1, 2), a1, 9)]).form()
            out = _edge_after(form, [swap, _shear(a1, 2)])
            steps.append(_m("apply_map", "y^9 (x y^2 - a1)^9 becomes x^27 y^9 under swap then y->y+a1 x^-2",
                            out == LaurentPoly.monomial(27, 9), {"a1": a1}, {"image": out.to_text()}))
        form = EdgeForm(((24, 9), (0, 1)), (0, 1), [((3, 1), a2, 8)]).form()
        out = _edge_after(form, [_shear(a2, 3)])
        edge = set(out.support())
        steps.append(_m("apply_map", "y (y x^3 - a2)^8 under y->y+a2 x^-3 has edge {(24,9),(21,8)}",
                        edge == {(24, 9), (21, 8)}, {"a2": a2}, {"support": edge}))
    if case_id == ar.NINE27:
        rows = corner_candidates_9_27()
        surv = [r["point"] for r in rows if r["passes"]]
        steps.append(_m("corner_candidates_9_27", "divisibility 21b'-8a' | 13 gcd(21-a',8-b')",
                        surv == [(5, 2), (13, 5)] and len(rows) == 8, {}, {"rows": rows, "survivors": surv}))
        ks = sorted({k for a, b in [(21, 8), (13, 5), (5, 2)] for k in range(1, 30) if (k + 1) * b < a})
        steps.append(_x("en-pair", "existence of k with (k+1)b < a and en-pair {(-k,0),(k+1,1)}",
                        "GGV1 Prop 8.2"))
        steps.append(_m("k-range", "(k+1)b < a over (a,b) in {(21,8),(13,5),(5,2)} forces k = 1",
                        ks == [1], {}, {"k": ks}))
        d = Direction(-3, 8)
        vals = {p: v_point(d, p) for p in [(42, 16), (2, 1), (-1, 0)]}
        steps.append(_m("v_point", "(2,1) is on the (-3,8) edge through (42,16), (-1,0) is not",
                        vals[(42, 16)] == vals[(2, 1)] != vals[(-1, 0)], {}, {"v_-3,8": vals}))
    if case_id == ar.NINE24:
        cands = possible_starting_points(1, 8, 3)
        dirs = sorted({tuple(c.direction) for c in cands})
        steps.append(_x("corollary", "edge (24,9)-(16,6) forces l_{rho,sigma}(P) = lambda R^{3m}", "GGV1 Cor 7.4"))
        steps.append(_m("possible_starting_points", "Algorithm 1 with (l,a,b) = (1,8,3) leaves Pred_P(1,0) in {(1,-2),(2,-5)}",
                        dirs == [(1, -2), (2, -5)], {"l": 1, "a": 8, "b": 3},
                        {"candidates": [c.to_dict() for c in cands]}))
        direction, s, n1, n2 = candidate_data(1, 24, 9, 12, 3)
        steps.append(_m("candidate_data", "three distinct factors: (c,d)=(12,3), (a,b)=(24,9) gives s=6, N1=6, N2=3",
                        (tuple(direction), s, n1, n2) == ((1, -2), 6, 6, 3), {},
                        {"direction": direction, "s": s, "N1": n1, "N2": n2}))
        steps.append(_x("multiplicity", "a linear factor of R^3 of multiplicity s = 6 contradicts distinct factors",
                        "GGV2 Prop 3.12(2)"))
    if case_id == ar.EIGHT28:
        form = EdgeForm(((28, 8), (0, 1)), (0, 1), [((4, 1), a1, 7)]).form()
        out = _edge_after(form, [_shear(a1, 4)])
        steps.append(_m("apply_map", "y (x^4 y - a)^7 under y->y+a x^-4 has edge {(28,8),(24,7)}",
                        set(out.support()) == {(28, 8), (24, 7)}, {"a": a1}, {"support": set(out.support())}))
        ks = sorted({k for a, b in [(24, 7), (17, 5), (10, 3), (3, 1)] for k in range(1, 30) if (k + 1) * b < a})
        steps.append(_m("k-range", "(k+1)b < a over the four opposite vertices gives k in {1,2}",
                        ks == [1, 2], {}, {"k": ks}))
        steps.append(_x("shape", "Pred_P(1,0) in {(1,-2),(1,-3)} and the branches a), b), c)", "GGV6 Prop 2.5"))
        steps.append(_x("parallel", "k = 2 is impossible since the edges of P and Q cannot be parallel",
                        "GGV1 Prop 8.2"))
    if case_id == ar.SEVEN21:
        form = LaurentPoly.monomial(42, 0) * (LaurentPoly.y() - LaurentPoly.monomial(-2, 0, a1)) ** 14
        out = apply_map(_shear(a1, 2), form)
        steps.append(_m("apply_map", "x^42 (y - a x^-2)^14 becomes x^42 y^14 under y->y+a x^-2",
                        out == LaurentPoly.monomial(42, 14), {"a": a1}, {"image": out.to_text()}))
        steps.append(_x("corollary", "leading forms along (-2,7) with q = 7", "GGV1 Cor 7.4"))
    return steps


# ---------------------------------------------------------------- case (8,32)

def run_case_8_32(seed=0):
    steps = []
    A0, A1, A2 = (8, 32), (8, 28), (Fraction(11, 4), 7)
    d = Direction(4, -1)
    same = v_point(d, A1) == v_point(d, A2) == 4
    steps.append(_m("v_point", "v_{4,-1}(8,28) = v_{4,-1}(11/4,7) = 4", same,
                    {"A1": A1, "A2": A2}, {"v": v_point(d, A1)}))
    target = 3
    mus = [Fraction(t, 4) for t in range(1, 5)]
    hits = [(mu * 8, mu * 28) for mu in mus if v_point(d, (mu * 8, mu * 28)) == target
            and (mu * 8).denominator == 1 and (mu * 28).denominator == 1]
    val_a0 = v_point((1, 1), A0)
    steps.append(_m("v_point", "(6,21) is the only mu(8,28) with v_{4,-1} = 3",
                    hits == [(6, 21)], {"v_{1,1}(A0)": val_a0}, {"points": hits}))
    mu = Fraction(6, 8)
    q1 = mu.denominator
    steps.append(_m("ratio", "en = (3/4) A1, so q1 = 4", mu == Fraction(3, 4) and q1 == 4,
                    {}, {"p1/q1": mu, "q1": q1}))
    g = math.gcd(2, 7)
    steps.append(_m("gcd", "(8,28) = 4 (2,7) with gcd(2,7) = 1, so d0 <= 4 and q1 | d0 gives d0 = 4",
                    g == 1 and 8 // 2 == 4 and 4 % q1 == 0, {}, {"gcd": g}))
    steps.append(_x("theorem", "q1 divides d0", "GGV1 Thm 7.6(5)"))
    rng = random.Random(f"8-32:{seed}")
    lam1 = _rand_nonzero(rng)
    R = LaurentPoly.monomial(2, 7) * (LaurentPoly.y() - lam1)
    phi = RingMap(LaurentPoly.x(), LaurentPoly.y() + lam1, "y->y+lambda1")
    img = apply_map(phi, R ** 4)
    want = (LaurentPoly.monomial(2, 1) * (LaurentPoly.y() + lam1) ** 7) ** 4
    low = min(img.support(), key=lambda p: (p[1], -p[0]))
    steps.append(_m("apply_map", "(x^2 y^7 (y - l1))^4 becomes (x^2 y (y + l1)^7)^4 with last corner (8,4)",
                    img == want and low == (8, 4), {"lambda1": lam1}, {"corner": low}))
    steps.append(_x("last-corner", "(8,4) cannot be a last possible corner", "GGV2 Prop 3.29"))
    return CaseReport(ar.EIGHT32, REDUCED_TO, steps, seed)


# ---------------------------------------------------------------- cases 9-27, 9-24, 7-21

def _hypotheses_9_27(np_, nq):
    """Corner conditions of the impossibility theorem on the pair of polygons."""
    P, Q = list(np_.vertices), list(nq.vertices)

    def tips(pts, mult):
        e31 = st_en(Direction(3, -1), pts)[1]
        s10, e10 = st_en(Direction(1, 0), pts)
        sm11 = st_en(Direction(-1, 1), pts)[0]
        return (e31 == s10 == (3 * mult, 8 * mult)) and (sm11 == e10 == (3 * mult, 9 * mult))
    return tips(P, 2) and tips(Q, 3)


def _pipeline_9_27(seed, steps):
    cfg_P = ar.random_admissible_P(ar.NINE27, seed)
    root = ar.build_root(ar.RootConfig(ar.NINE27, cfg_P, depth=14))
    steps.append(_m("build_root", "C_3 ... C_{-11} with every valuation certificate", all(c["ok"] for c in root.valuation_certs),
                    {"seed": seed}, {"certificates": len(root.valuation_certs)}))
    D = ar.build_D(root)
    direct = ar.build_D_direct(ar.NINE27, cfg_P, 14)
    steps.append(_m("build_D", "D_k polynomial and equal to the K[y] recursion", _same_series(D.D, direct), {}, {}))
    Dt = ar.shift_D(D)
    vals = ar.verify_D_valuations(D, Dt)
    steps.append(_m("verify_D_valuations", "weighted bounds on D_k give deg and order bounds for d_1, d_0, d_-1",
                    vals["ok"], {}, {k: vals[k] for k in ("deg_weight", "deg_value", "ord_weight", "ord_value",
                                                        "d_deg_max", "d_ord_min")}))
    steps.append(_m("check_power_identities", "(D^2)_{-k}, (D^3)_{-k} are the C-rows times powers of C3",
                    ar.check_power_identities(ar.NINE27, seed), {}, {}))
    f1 = ar.solve_f1_ode()
    steps.append(_m("solve_f1_ode", "unique polynomial f1", f1 == ar.f1_for(ar.case_data(ar.NINE27).C3),
                    {}, {"f1": f1}))
    props = ar.f_properties()
    steps.append(_m("f_properties", "f separable, y(y+1) | f, gcd(g, g') = 1",
                    props["separable"] and props["y(y+1) divides f"] and props["gcd(g, g')"].degree() == 0,
                    {}, {"deg f": props["deg"]}))
    steps.append(_m("remark_normalization_identity", "normalization of the x^2, x, x^0 terms of C",
                    ar.remark_normalization_identity()["ok"], {}, {}))
    sys = el.generate_system(ar.NINE27)
    trace = el.eliminate(sys)
    steps.append(_m("eliminate", "linear isolations then resultants in dm3, dm2", el.replay_isolations(sys, trace),
                    {"selected": sys.selected}, {"steps": len(trace.steps)}))
    pe, _ = el.strip(el.principal_equation(ar.NINE27, trace.final.ring))
    fin = trace.final
    steps.append(_m("principal_equation", "output divisible by 18 C3^23 d1 dm1^6 F4 + 8 C3^69 F4^3 + 27 d0 dm1^9",
                    pe.divides(fin), {}, {"quotient": fin.exquo(pe) if pe.divides(fin) else None}))
    tb = el.eliminate(sys, mode="beta")
    steps.append(_m("soundness_spot_check", "50 random points of the residual variety satisfy the output",
                    el.soundness_spot_check(tb, 50, seed), {}, {"final(beta)": tb.final}))
    c = el.contradiction_9_27(trace.final, vals)
    steps.append(_m("contradiction_9_27", "MULTIPLICITY witness for k >= 8 and DEGREE witness for k <= 7",
                    c.ok, {}, c.witness))
    return c


def _same_series(a, b):
    lo = max(a.trunc, b.trunc)
    return all(a.get(k) == b.get(k) for k in range(3, lo - 1, -1))


def run_case_9_27(seed=0):
    red = run_reduction(ar.NINE27, seed)
    steps = list(red.steps)
    np_, nq = red.alternatives["final"]
    rng = random.Random(f"9-27-top:{seed}")
    lam = _rand_nonzero(rng)
    shift = RingMap(LaurentPoly.x() + lam, LaurentPoly.y(), "x->x+lambda")
    top_p = LaurentPoly.monomial(0, 18) * (LaurentPoly.x() - lam) ** 6
    top_q = LaurentPoly.monomial(0, 27) * (LaurentPoly.x() - lam) ** 9
    collapsed = (apply_map(shift, top_p) == LaurentPoly.monomial(6, 18)
                 and apply_map(shift, top_q) == LaurentPoly.monomial(9, 27))
    steps.append(_m("apply_map", "top edges y^18 (x-l)^6 and y^27 (x-l)^9 collapse to x^6 y^18 and x^9 y^27 under x->x+l",
                    collapsed, {"lambda": lam}, {}))
    steps.append(_x("successors", "l_{0,1}(P) is a sixth power and Succ(1,0) >= (-1,1) after the shift",
                    "GGV1 Cor 7.2; GGV1 Thm 2.6"))
    # the successor bound leaves only points with j - i <= 12 (P) and j - i <= 18 (Q)
    clip_p = hull([p for p in np_.vertices if p[1] - p[0] <= 12] + [(6, 18)])
    clip_q = hull([p for p in nq.vertices if p[1] - p[0] <= 18] + [(9, 27)])
    steps.append(_m("hypotheses", "after the shift the polygons meet the corner hypotheses of the impossibility theorem",
                    _hypotheses_9_27(clip_p, clip_q), {}, {"N(P)": clip_p, "N(Q)": clip_q}))
    steps.append(_x("homogeneous-root", "l_{1,0}(P) = R^2, l_{1,0}(Q) = R^3 with R = x^3 C3", "GGV1 Props 1.13, 2.1"))
    c = _pipeline_9_27(seed, steps)
    rep = CaseReport(ar.NINE27, CONTRADICTION if c.ok else REDUCED_TO, steps, seed, red.polygons)
    return rep


def run_case_9_24(seed=0):
    red = run_reduction(ar.NINE24, seed)
    steps = list(red.steps)
    ok = all(_hypotheses_9_27(p, q) for p, q in red.alternatives.values())
    steps.append(_m("hypotheses", "all three alternatives meet the corner hypotheses of the impossibility theorem",
                    ok, {}, {"alternatives": sorted(red.alternatives)}))
    steps.append(_x("homogeneous-root", "l_{1,0}(P) = R^2, l_{1,0}(Q) = R^3 with R = x^3 C3", "GGV1 Props 1.13, 2.1"))
    c = _pipeline_9_27(seed, steps)
    return CaseReport(ar.NINE24, CONTRADICTION if c.ok else REDUCED_TO, steps, seed, red.polygons)


def run_case_7_21(seed=0):
    red = run_reduction(ar.SEVEN21, seed)
    steps = list(red.steps)
    np_, _ = red.alternatives["final"]
    stated = NewtonPolygon([(0, 0), (4, 0), (6, 2), (0, 14)])
    lead = [p for p in np_.vertices if p[0] == max(q[0] for q in np_.vertices)]
    steps.append(_m("corner", "reduced N(P) has the corner (6,2) and l_{1,0}(P) sits at x^6 y^2",
                    np_ == stated and lead == [(6, 2)], {}, {"N(P)": np_}))
    steps.append(_x("intersection-numbers", "I_M = 4 < I_m = 5 contradicts I_M >= I_m (stub, not replayed)",
                    "GGV6 Thm 7.3"))
    P = ar.random_admissible_P(ar.SEVEN21, seed)
    root = ar.build_root(ar.RootConfig(ar.SEVEN21, P, depth=14))
    steps.append(_m("build_root", "C_3 ... C_{-11} with every valuation certificate",
                    all(c["ok"] for c in root.valuation_certs), {"seed": seed}, {}))
    D = ar.build_D(root)
    steps.append(_m("build_D", "D_k polynomial and equal to the K[y] recursion",
                    _same_series(D.D, ar.build_D_direct(ar.SEVEN21, P, 14)), {}, {}))
    Dt = ar.shift_D(D)
    vals = ar.verify_D_valuations(D, Dt)
    steps.append(_m("verify_D_valuations", "deg d1 <= 6, deg d0 <= 9, deg d_-1 <= 12", vals["ok"], {},
                    {"d_deg_max": vals["d_deg_max"]}))
    F4 = ar.extract_F4(ar.SEVEN21)
    steps.append(_m("extract_F4", "F_{-4} = 1/2 y^-1", F4.power == 1 and F4.num == UniPoly([Fraction(1, 2)]), {}, {"f1": F4.num}))
    sys = el.generate_system(ar.SEVEN21)
    trace = el.eliminate(sys)
    pe, _ = el.strip(el.principal_equation(ar.SEVEN21, trace.final.ring))
    steps.append(_m("eliminate", "primitive part is 9 y^9 d1 dm1^6 + y^27 + 27 d0 dm1^9",
                    trace.final == pe and el.replay_isolations(sys, trace), {}, {"final": trace.final}))
    steps.append(_m("verify_identity_7_21", "2 Q_-3 - 3(...) = -dm1^3 - 6 d0 dm1 dm2 - 3 d1 dm2^2 + 3 dm3^2 + 2 lam y^8",
                    el.verify_identity_7_21() and not el.verify_identity_7_21(drop_lambda=True), {}, {}))
    aux = el.auxiliary_relations_7_21(trace)
    steps.append(_m("auxiliary_relations_7_21", "3 dm1^2 dm2 = y^9 and 2 dm3 y^9 = 3 d0 dm1^4", aux["ok"], {}, aux))
    steps.append(_x("exact-degrees", "deg d1 = 6 and deg d0 = 9 are attained", "7-21 exact degree claim (not replayed)"))
    c = el.contradiction_7_21(trace.final, deg_d1=vals["d_deg_max"][1], deg_d0=vals["d_deg_max"][0])
    steps.append(_m("contradiction_7_21", "k = 2 forced, then the identity needs a non-square to be a square",
                    c.ok, {}, c.witness))
    return CaseReport(ar.SEVEN21, CONTRADICTION if c.ok else REDUCED_TO, steps, seed, red.polygons)


def run_case_8_28(seed=0):
    red = run_reduction(ar.EIGHT28, seed)
    steps = list(red.steps)
    steps.append(_x("open", "the (72,108) systems are not eliminated; both branches are reported", "beyond desk scale"))
    return CaseReport(ar.EIGHT28, VERDICT_OPEN, steps, seed, red.polygons)


def _prior(spec, seed):
    steps = [_x("prior", f"case {spec.A0} with (m,n) = {spec.mn} discarded earlier", spec.sources)]
    return CaseReport(spec.case_id, REDUCED_TO, steps, seed)


_RUNNERS = {
    ar.NINE27: run_case_9_27, ar.NINE24: run_case_9_24, ar.SEVEN21: run_case_7_21,
    ar.EIGHT32: run_case_8_32, ar.EIGHT28: run_case_8_28,
}


def run_case(case_id, seed=None):
    seed = default_seed() if seed is None else seed
    case_id = ALIASES.get(case_id, case_id)
    if case_id in _RUNNERS:
        return _RUNNERS[case_id](seed)
    for spec in TABLE:
        if spec.case_id == case_id:
            return _prior(spec, seed)
    raise KeyError(f"unknown case {case_id!r}")
