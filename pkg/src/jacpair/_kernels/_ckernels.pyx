# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the product kernels in ``_pykernels``."""


def convolve(list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    cdef object x
    cdef list out
    if na == 0 or nb == 0:
        return []
    out = [0] * (na + nb - 1)
    for i in range(na):
        x = a[i]
        if not x:
            continue
        for j in range(nb):
            out[i + j] = out[i + j] + x * b[j]
    return out


def sparse_mul(dict a, dict b):
    cdef dict out = {}
    cdef list ka, va, kb, vb
    cdef Py_ssize_t na, nb, i, j
    cdef object eb, cb, k, v
    if len(a) < len(b):
        a, b = b, a
    ka = list(a.keys())
    va = list(a.values())
    kb = list(b.keys())
    vb = list(b.values())
    na = len(ka)
    nb = len(kb)
    for i in range(nb):
        eb = kb[i]
        cb = vb[i]
        for j in range(na):
            k = ka[j] + eb
            v = out.get(k)
            if v is None:
                out[k] = va[j] * cb
            else:
                out[k] = v + va[j] * cb
    return {k: v for k, v in out.items() if v}
