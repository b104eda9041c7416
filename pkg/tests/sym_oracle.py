"""Independent sympy route for the coefficient systems and their elimination."""
import sympy as sp

x, y, lam, beta, C3 = sp.symbols("x y lam beta C3")
d1, d0 = sp.symbols("d1 d0")
DM = sp.symbols("dm1:12")
NAMES = {str(s): s for s in (x, y, lam, beta, C3, d1, d0, *DM)}


def to_sympy(text):
    return sp.sympify(text.replace("^", "**"), locals=NAMES)


def rows(case_id):
    """Rows (D~^2)_{-1..-8}, (Q~)_{-1..-4} with the F4 block written as beta."""
    base, lp = (C3, 20) if case_id == "9-27" else (y, 8)
    t = sp.Symbol("t")  # t = 1/x
    D = 1 / t**3 + d1 / t + d0 + sum(DM[k - 1] * t**k for k in range(1, 12))
    D2 = sp.expand(D**2)
    D3 = sp.expand(D**3)
    u = sp.expand(D * t**3 - 1)
    Dinv = sp.expand(t**3 * sum((-u) ** n for n in range(0, 4)))
    out = {}
    for k in range(1, 9):
        out[f"D2_-{k}"] = D2.coeff(t, k)
    for j in range(1, 5):
        q = D3.coeff(t, j) + Dinv.coeff(t, j) * lam * base**lp
        if j == 4:
            q += beta
        out[f"Q_-{j}"] = sp.expand(q)
    return out


def eliminate(system, selected, isolate, order, residuals=None):
    eqs = {k: system[k] for k in selected}
    for var in isolate:
        var = NAMES[var]
        for label in sorted(eqs, key=lambda s: (0 if s.startswith("D2") else 1, -int(s.split("_")[1]))):
            if not label.startswith("D2"):
                continue
            p = sp.Poly(eqs[label], var)
            if p.degree() == 1 and p.coeffs()[0].is_number:
                val = sp.solve(eqs[label], var)[0]
                del eqs[label]
                eqs = {k: sp.expand(v.subs(var, val)) for k, v in eqs.items()}
                break
        else:
            raise AssertionError(f"cannot isolate {var}")
    current = list(eqs.values())
    if residuals is not None:
        residuals.extend(current)
    for var in order:
        var = NAMES[var]
        inv = [p for p in current if p.has(var)]
        rest = [p for p in current if not p.has(var)]
        pivot = min(inv, key=lambda p: (sp.degree(p, var), len(sp.Add.make_args(p))))
        current = rest + [sp.factor_terms(sp.resultant(pivot, p, var)) for p in inv if p is not pivot]
    assert len(current) == 1
    return current[0]
