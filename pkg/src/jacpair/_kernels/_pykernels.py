"""Pure-Python polynomial product kernels.

Both functions are coefficient-agnostic: anything supporting ``+``, ``*`` and
truthiness works (ints, Fractions, parameter fractions).
"""


def convolve(a, b):
    """Full convolution of two dense coefficient lists (low degree first)."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b, i):
            out[j] = out[j] + x * y
    return out


def sparse_mul(a, b):
    """Product of two sparse polynomials stored as {packed exponent: coeff}.

    Exponent keys must be additive (packed so that the key of a product
    monomial is the sum of the keys).  Zero coefficients are dropped.
    """
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    items = list(a.items())
    for eb, cb in b.items():
        for ea, ca in items:
            k = ea + eb
            out[k] = get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}
