"""Pure-Python polynomial term arithmetic.

Terms are dicts mapping exponent tuples to nonzero coefficients; the
characteristic `p` is 0 for rational (Fraction) coefficients or a prime for
integers mod p.  The compiled module `_poly_speedups` exports the same four
functions; `_kernel` picks whichever is available at import time.  Keep the
two implementations in lockstep — there is a parity test.
"""


def terms_add(a, b, p):
    out = dict(a)
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


def terms_neg(a, p):
    if p:
        return {k: (-v) % p for k, v in a.items()}
    return {k: -v for k, v in a.items()}


def terms_scale(a, c, p):
    if p:
        c %= p
    if not c:
        return {}
    out = {}
    for k, v in a.items():
        s = v * c
        if p:
            s %= p
        if s:
            out[k] = s
    return out


def terms_mul(a, b, p):
    if not a or not b:
        return {}
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
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
