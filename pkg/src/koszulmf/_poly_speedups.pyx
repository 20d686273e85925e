# cython: language_level=3
"""Compiled twin of _poly_fallback.  Same four functions, same semantics.

The win is loop/dispatch overhead on the dict-of-tuples representation;
coefficients stay Python objects (Fraction or int) so exactness is untouched.
"""


def terms_add(dict a, dict b, long p):
    cdef dict out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        if w is None:
            out[k] = v
        else:
            s = w + v
            if p:
                s %= p
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def terms_neg(dict a, long p):
    cdef dict out = {}
    for k, v in a.items():
        if p:
            out[k] = (-v) % p
        else:
            out[k] = -v
    return out


def terms_scale(dict a, c, long p):
    if p:
        c %= p
    if not c:
        return {}
    cdef dict out = {}
    for k, v in a.items():
        s = v * c
        if p:
            s %= p
        if s:
            out[k] = s
    return out


def terms_mul(dict a, dict b, long p):
    if not a or not b:
        return {}
    cdef dict out = {}
    cdef tuple ka, kb, k
    cdef Py_ssize_t i, n
    for ka, va in a.items():
        n = len(ka)
        for kb, vb in b.items():
            k = tuple([ka[i] + kb[i] for i in range(n)])
            c = va * vb
            w = out.get(k)
            if w is not None:
                c = c + w
            if p:
                c %= p
            if c:
                out[k] = c
            elif w is not None:
                del out[k]
    return out
