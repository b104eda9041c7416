"""Approximate square roots C of P in K[y, C3^-1]((x^-1)) and derived data.

Two case families are supported:

* ``NINE27``  with C3 = y^8 (y + 1) and l_{1,0}(P) = x^6 C3^2,
* ``SEVEN21`` with C3 = y          and l_{1,0}(P) = x^6 y^2.

The root is built coefficient by coefficient from 2 C3 C_{3-k} = P_{6-k} -
sum_{j=1}^{k-1} C_{3-j} C_{3-k+j}.  Valuation bounds are checked at every step,
the polynomials D_k = C_k * C3^e(k) are formed and the x-shift killing D_2 is
applied to obtain the d_k used by the elimination module.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg import (ParamField, UniPoly, is_separable, multiplicity, poly_gcd,
                       solve_linear_system)
from .laurent import (LocalizedYCoeff, TruncSeries, series_inverse, series_mul,
                      series_pow, shift_x, val_at_infinity, val_at_zero)

__all__ = [
    "NINE27", "SEVEN21", "NINE24", "EIGHT28", "EIGHT32", "CASES",
    "RootConfig", "RootSeries", "DSeries", "case_data", "random_admissible_P",
    "build_root", "build_D", "build_D_direct", "shift_D", "extract_F4",
    "solve_linear_ode", "solve_f1_ode", "solve_bracket_equation", "f1_for",
    "verify_D_valuations", "d_bounds", "check_power_identities",
    "remark_normalization_identity", "RootError", "f_properties", "g_of_f1",
]

NINE27 = "9-27"
SEVEN21 = "7-21"
NINE24 = "9-24"
EIGHT28 = "8-28"
EIGHT32 = "8-32"
CASES = (NINE27, SEVEN21)

Y = UniPoly.gen()


class RootError(ValueError):
    """An input P is inconsistent with the hypotheses of the construction."""


@dataclass(frozen=True)
class CaseData:
    case_id: str
    C3: UniPoly
    # bounds on x^k C_k, written as  wx*k + wy*val <= bound  for the two embeddings
    inf_weight: tuple   # (wx, wy, bound) for val_at_infinity
    zero_weight: tuple  # (wx, wy, bound) for val_at_zero (wy < 0)
    d_exp: tuple        # (e0, e1): D_k = C_k * C3^(e0 - e1*k)
    top_vertex: tuple   # exponent of x^3 C3 whose weights attain the bounds
    lam_power: int      # lambda C3^lam_power in the Q-tilde rows
    F4_power: int       # F_{-4} C3^F4_power in the Q-tilde rows


def case_data(case_id):
    if case_id == NINE27:
        c3 = UniPoly.parse("y^8*(y+1)")
        # v_{-1,1}(x^k C_k) <= 6 and v_{3,-1}(x^k C_k) <= 1
        return CaseData(NINE27, c3, (-1, 1, 6), (3, -1, 1), (5, 2), (3, 9), 20, 23)
    if case_id == SEVEN21:
        # v_{2,1}(x^k C_k) <= 7 and v_{1,-1}(x^k C_k) <= 2
        return CaseData(SEVEN21, Y, (2, 1, 7), (1, -1, 2), (2, 1), (3, 1), 8, 10)
    raise ValueError(f"no approximate-root data for case {case_id!r}")


@dataclass
class RootConfig:
    case_id: str
    P: dict                # x-exponent -> UniPoly, exponents 0..6
    depth: int = 14        # construct C_3 ... C_{3-depth}
    C3: UniPoly = None

    def __post_init__(self):
        cd = case_data(self.case_id)
        if self.C3 is None:
            self.C3 = cd.C3
        if self.P.get(6) != self.C3 * self.C3:
            raise RootError("l_{1,0}(P) must equal (x^3 C3)^2")
        if any(k > 6 or k < 0 for k in self.P if self.P[k]):
            raise RootError("P must have x-degree in 0..6")


@dataclass
class RootSeries:
    case_id: str
    C: TruncSeries
    C3: UniPoly
    valuation_certs: list = field(default_factory=list)


@dataclass
class DSeries:
    case_id: str
    D: TruncSeries          # UniPoly coefficients
    exponent: tuple         # (e0, e1)


def _point_weight(w, k, val):
    return w[0] * k + w[1] * val


def random_admissible_P(case_id, seed, coeff_range=9, density=0.7):
    """Random P with the prescribed leading form and support bounds.

    NINE27: support in 0 <= i <= 6, max(0, 3i - 2) <= j <= i + 12.
    SEVEN21: support in the polygon {(0,0), (4,0), (6,2), (0,14)}.
    """
    rng = random.Random(seed)
    cd = case_data(case_id)
    P = {6: cd.C3 * cd.C3}

    def coeff():
        while True:
            num = rng.randint(-coeff_range, coeff_range)
            if num:
                return Fraction(num, rng.randint(1, 4))

    for i in range(6):
        if case_id == NINE27:
            lo, hi = max(0, 3 * i - 2), i + 12
        else:
            lo, hi = max(0, i - 4), 14 - 2 * i
        cs = [0] * (hi + 1)
        for j in range(lo, hi + 1):
            if rng.random() < density:
                cs[j] = coeff()
        P[i] = UniPoly(cs)
    return P


def _check_bounds(cd, k, c):
    """Both valuation certificates for the term x^k C_k."""
    if not c:
        return {"k": k, "zero": True, "ok": True}
    vi = val_at_infinity(c)
    vz = val_at_zero(c)
    wi = _point_weight(cd.inf_weight, k, vi)
    wz = _point_weight(cd.zero_weight, k, vz)
    ok = wi <= cd.inf_weight[2] and wz <= cd.zero_weight[2]
    return {"k": k, "val_inf": vi, "val_zero": vz, "v_inf": wi, "v_zero": wz, "ok": ok}


def build_root(cfg):
    """Construct C_3, ..., C_{3-depth} and certify the valuation bounds."""
    cd = case_data(cfg.case_id)
    base = cfg.C3
    C = {3: LocalizedYCoeff(base, base)}
    certs = [_check_bounds(cd, 3, C[3])]
    if not certs[0]["ok"]:
        raise RootError("leading term violates its own bounds")
    for k in range(1, cfg.depth + 1):
        acc = LocalizedYCoeff(cfg.P.get(6 - k, UniPoly()), base)
        for j in range(1, k):
            acc = acc - C[3 - j] * C[3 - k + j]
        ck = (acc / 2).div_base(1)
        C[3 - k] = ck
        cert = _check_bounds(cd, 3 - k, ck)
        certs.append(cert)
        if not cert["ok"]:
            raise RootError(f"valuation bound violated at C_{3 - k}: {cert}")
    series = TruncSeries({k: v for k, v in C.items()}, trunc=3 - cfg.depth, top=3)
    return RootSeries(cfg.case_id, series, base, certs)


def build_D(root):
    """D_k = C_k * C3^(e0 - e1*k); every coefficient must be a polynomial."""
    cd = case_data(root.case_id)
    e0, e1 = cd.d_exp
    out = {}
    for k, c in root.C.coeffs.items():
        e = e0 - e1 * k
        d = c.times_base(e) if e >= 0 else c.div_base(-e)
        if not d.is_polynomial():
            raise RootError(f"D_{k} is not a polynomial")
        out[k] = d.as_unipoly()
    return DSeries(root.case_id, TruncSeries(out, root.C.trunc, 3), (e0, e1))


def build_D_direct(case_id, P, depth=14):
    """Second route to D: recursion entirely inside K[y].

    D_k = 1/2 P_{k+3} C3^{e(k) - 1} - 1/2 sum_{j=k+1}^{2} D_j D_{k+3-j}
    where e(k) = e0 - e1*k and C3^{...} is the power left after clearing.
    """
    cd = case_data(case_id)
    e0, e1 = cd.d_exp
    base = cd.C3
    D = {3: UniPoly([1])}
    for k in range(2, 3 - depth - 1, -1):
        pk = P.get(k + 3, UniPoly())
        # C_k = (P_{k+3} - sum_{j=k+1}^{2} C_j C_{k+3-j}) / (2 C3); multiply by C3^(e0-e1*k)
        # and use D_j D_{k+3-j} = C_j C_{k+3-j} C3^(2 e0 - e1 (k+3))
        pow_p = e0 - e1 * k - 1
        shift = (e0 - e1 * k - 1) - (2 * e0 - e1 * (k + 3))
        s = UniPoly()
        for j in range(k + 1, 3):
            s = s + D[j] * D[k + 3 - j]
        if shift < 0:
            raise RootError("unexpected negative shift in the D recursion")
        if pow_p >= 0:
            lead = pk * base ** pow_p
        elif (base ** -pow_p).divides(pk):
            lead = pk.exquo(base ** -pow_p)
        else:
            raise RootError(f"P_{k + 3} is not divisible by the required power of C3")
        term = lead - s * base ** shift
        D[k] = term / 2
    return TruncSeries(D, 3 - depth, 3)


def shift_D(dseries, trunc=None):
    """Apply x -> x - D_2/3 so that the x^2 coefficient vanishes."""
    D = dseries.D
    c = D.get(2, UniPoly()) * Fraction(-1, 3)
    Dt = shift_x(D, c, trunc)
    if Dt.get(2, UniPoly()):
        raise RootError("shift did not kill the x^2 coefficient")
    return Dt


def d_bounds(case_id):
    """Linear bounds on D_k derived from the C-valuation bounds.

    Returns functions deg_max(k) and ord_min(k) together with the weights
    (wx, wy) and values they imply for x^k D_k.
    """
    cd = case_data(case_id)
    e0, e1 = cd.d_exp
    wi, wz = cd.inf_weight, cd.zero_weight
    db, ob = cd.C3.degree(), cd.C3.ord0()
    # val_inf(C_k) <= (bi - wxi*k)/wyi ; val_zero(C_k) >= (bz - wxz*k)/wyz  (wyz < 0)

    def deg_max(k):
        return Fraction(wi[2] - wi[0] * k, wi[1]) + db * (e0 - e1 * k)

    def ord_min(k):
        return Fraction(wz[2] - wz[0] * k, wz[1]) + ob * (e0 - e1 * k)

    # deg_max(k) = A - B k  ->  weight (B, 1) bounded by A
    A = deg_max(0)
    B = A - deg_max(1)
    A0 = ord_min(0)
    B0 = ord_min(1) - A0
    return {
        "deg_max": deg_max, "ord_min": ord_min,
        "deg_weight": (B, 1), "deg_value": A,
        "ord_weight": (B0, -1), "ord_value": -A0,
    }


def verify_D_valuations(dseries, shifted=None):
    """Certify the weighted bounds for every D_k and derived d bounds."""
    b = d_bounds(dseries.case_id)
    rows = []
    ok = True
    (wd, _), vd = b["deg_weight"], b["deg_value"]
    (wo, _), vo = b["ord_weight"], b["ord_value"]
    for k in sorted(dseries.D.coeffs, reverse=True):
        p = dseries.D.coeffs[k]
        v_deg = wd * k + p.degree()
        v_ord = wo * k - p.ord0()
        good = v_deg <= vd and v_ord <= vo
        ok = ok and good
        rows.append({"k": k, "v_deg": v_deg, "v_ord": v_ord, "ok": good})
    top = dseries.D.coeffs[3]
    attained = (wd * 3 + top.degree() == vd) and (wo * 3 - top.ord0() == vo)
    out = {
        "case": dseries.case_id,
        "deg_weight": (int(wd), 1), "deg_value": int(vd),
        "ord_weight": (int(wo), -1), "ord_value": int(vo),
        "rows": rows, "ok": ok and attained, "attained_at_top": attained,
        "d_deg_max": {3 - j: int(j * wd) for j in (2, 3, 4)},
        "d_ord_min": {3 - j: int(-j * wo) for j in (2, 3, 4)},
    }
    d2 = dseries.D.coeffs.get(2)
    if d2 is not None:
        # the shift x -> x - D_2/3 keeps both weights iff D_2 fits inside them
        out["shift_preserves"] = d2.degree() <= wd and (d2.ord0() >= -wo)
    else:
        out["shift_preserves"] = True
    if shifted is not None:
        checks = []
        for k, p in shifted.coeffs.items():
            if not p:
                continue
            checks.append(wd * k + p.degree() <= vd and wo * k - p.ord0() <= vo)
        out["shifted_ok"] = all(checks)
        out["ok"] = out["ok"] and out["shifted_ok"] and out["shift_preserves"]
    return out


def check_power_identities(case_id, seed, kmax=8):
    """(D^2)_{-k} = (C^2)_{-k} C3^{10+2k}-type identities on a random C.

    Uses random localized coefficients, so the identity is non-trivial.
    """
    cd = case_data(case_id)
    e0, e1 = cd.d_exp
    base = cd.C3
    rng = random.Random(seed)
    C = {3: LocalizedYCoeff(base, base)}
    # D^3 is known down to trunc(D) + 6
    depth = kmax + 9
    for k in range(2, 3 - depth - 1, -1):
        num = UniPoly([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(rng.randint(1, 4))])
        C[k] = LocalizedYCoeff(num, base, rng.randint(0, 3))
    Cs = TruncSeries(C, 3 - depth, 3)
    D = {}
    for k, c in C.items():
        e = e0 - e1 * k
        D[k] = c.times_base(e) if e >= 0 else c.div_base(-e)
    Ds = TruncSeries(D, 3 - depth, 3)
    C2, D2 = series_mul(Cs, Cs), series_mul(Ds, Ds)
    C3s, D3s = series_mul(C2, Cs), series_mul(D2, Ds)
    ok = True
    for k in range(1, kmax + 1):
        e2 = 2 * e0 - e1 * (-k)
        e3 = 3 * e0 - e1 * (-k)
        ok = ok and D2.get(-k) == C2.get(-k) * LocalizedYCoeff(base ** e2, base)
        ok = ok and D3s.get(-k) == C3s.get(-k) * LocalizedYCoeff(base ** e3, base)
    return ok


# ---------------------------------------------------------------- F_{-4} and the ODE

def solve_linear_ode(a1, a0, rhs):
    """Polynomial solutions of a1 N' + a0 N = rhs by coefficient matching.

    Returns (N, nullity) where nullity is the dimension of polynomial
    solutions of the homogeneous equation within the degree bound.
    """
    p, q = a1.degree(), a0.degree()
    if p - 1 == q:
        # leading coefficients can cancel for N of degree n with n*lc(a1) + lc(a0) = 0
        root = Fraction(-a0.lc()) / Fraction(a1.lc())
        indicial = int(root) if root.denominator == 1 and root >= 0 else -1
        n = max(rhs.degree() - q, indicial)
    elif p - 1 > q:
        n = rhs.degree() - (p - 1)
    else:
        n = rhs.degree() - q
    if n < 0:
        return (UniPoly() if not rhs else None), 0
    rows_needed = n + max(p - 1, q) + 1
    rows = []
    b = []
    for r in range(max(rows_needed, rhs.degree() + 1)):
        row = []
        for i in range(n + 1):
            # contribution of y^i to the coefficient of y^r
            c = 0
            if i:
                c += i * a1[r - i + 1]
            c += a0[r - i]
            row.append(c)
        rows.append(row)
        b.append(rhs[r])
    sol, nullity = solve_linear_system(rows, b)
    if sol is None:
        return None, nullity
    return UniPoly(sol), nullity


def solve_f1_ode():
    """Solve y^9 (y+1)^2 = 6 y (y+1) f' - 10 (9y + 8) f."""
    a1 = UniPoly.parse("6*y*(y+1)")
    a0 = UniPoly.parse("-10*(9*y+8)")
    rhs = UniPoly.parse("y^9*(y+1)^2")
    f1, nullity = solve_linear_ode(a1, a0, rhs)
    if f1 is None:
        raise RootError("no polynomial solution")
    if nullity:
        raise RootError("polynomial solution is not unique")
    return f1


def f1_for(C3):
    """Polynomial f1 = C3^3 F_{-4} solving 6 C3 f1' - 10 C3' f1 = C3^2."""
    a1 = C3 * 6
    a0 = C3.derivative() * (-10)
    sol, nullity = solve_linear_ode(a1, a0, C3 * C3)
    if sol is None or nullity:
        raise RootError("bracket equation has no unique polynomial solution")
    return sol


def solve_bracket_equation(C3):
    """F_{-4} with [x^6 C3^2, F_{-4} x^{-4}] = x, as a localized coefficient."""
    f1 = f1_for(C3)
    return LocalizedYCoeff(f1, C3, 3)


def extract_F4(case_id, Q=None, root=None, lam=0):
    """F_{-4}: read off (Q - C^3 - lam C^{-1})_{-4}, or solve the bracket equation."""
    cd = case_data(case_id)
    if Q is None:
        return solve_bracket_equation(cd.C3)
    if root is None:
        raise ValueError("a root series is needed to read F_{-4} from Q")
    C = root.C
    if C.trunc is not None and C.trunc > -7:
        raise RootError("root series too shallow to read the x^-4 coefficient")
    C3s = series_pow(C, 3)
    lead = Q.get(9)
    if lead != C3s.get(9):
        raise RootError("l_{1,0}(Q) must equal (x^3 C3)^3")
    acc = Q.get(-4, 0) - C3s.get(-4)
    if lam:
        Cinv = _localized_inverse(C, -4)
        acc = acc - Cinv.get(-4) * lam
    if not isinstance(acc, LocalizedYCoeff):
        acc = LocalizedYCoeff(UniPoly([acc]) if not isinstance(acc, UniPoly) else acc, cd.C3)
    return acc


def _localized_inverse(C, trunc):
    """1/C; the top coefficient C3 is a unit of the localized ring."""
    return series_inverse(C, trunc)


# ---------------------------------------------------------------- normalization remark

def remark_normalization_identity(order=7):
    """Check the substitution identity behind the normalization alpha_2 = alpha_1 = alpha_0 = 0.

    With u standing for C and t = (2/3) alpha_1 u^-2, C~ = u (1 + t)^(1/2)
    satisfies C~^2 = u^2 + (2/3) alpha_1, C~ = u + alpha_1/3 u^-1 + O(u^-3) and
    C~^3 = u^3 + alpha_1 u + g1 u^-1 + ... with only odd powers.
    """
    K = ParamField(["alpha1"])
    a1 = K.gen("alpha1")
    t = a1 * Fraction(2, 3)

    def binom_series(expo):
        # (1 + t u^-2)^expo as a series in u, known down to u^-order
        out = {}
        coef = Fraction(1)
        n = 0
        while -2 * n >= -order - 3:
            out[-2 * n] = t ** n * coef if n else K(1)
            coef = coef * (Fraction(expo) - n) / (n + 1)
            n += 1
        return TruncSeries(out, -order - 3, 0)

    Ct = binom_series(Fraction(1, 2)).shift(1)
    Ct3 = binom_series(Fraction(3, 2)).shift(3)
    sq = series_mul(Ct, Ct)
    cube = series_mul(sq, Ct)
    lo = -order
    ok_sq = all(sq.get(k) == (K(1) if k == 2 else t if k == 0 else 0)
                for k in range(lo, 3))
    ok_cube = all(cube.get(k) == Ct3.get(k) for k in range(lo, 4))
    odd_only = all(not Ct3.get(k) for k in range(lo, 4) if k % 2 == 0)
    first = Ct.get(-1) == a1 * Fraction(1, 3)
    lin = Ct3.get(1) == a1
    return {
        "square_ok": ok_sq, "cube_ok": ok_cube, "odd_powers_only": odd_only,
        "C_inv_coeff_is_alpha1_over_3": first, "C_coeff_of_cube_is_alpha1": lin,
        "gamma1": str(Ct3.get(-1)),
        "ok": ok_sq and ok_cube and odd_only and first and lin,
    }


def g_of_f1(f1):
    """g = f1 / (y^9 (y+1)^2)."""
    return f1.exquo(UniPoly.parse("y^9*(y+1)^2"))


def f_properties(C3=None):
    """f = C3^2 F_{-4} = f1 / C3: polynomial, separable, y(y+1) | f, deg 6."""
    C3 = C3 if C3 is not None else case_data(NINE27).C3
    f1 = f1_for(C3)
    f = f1.exquo(C3)
    yy1 = UniPoly.parse("y*(y+1)")
    return {
        "f": f, "f1": f1,
        "polynomial": True,
        "separable": is_separable(f),
        "y(y+1) divides f": yy1.divides(f),
        "deg": f.degree(),
        "mult_y_f1": multiplicity(f1, Y),
        "gcd(g, g')": poly_gcd(g_of_f1(f1), g_of_f1(f1).derivative()),
    }
