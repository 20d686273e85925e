"""Exact Gaussian elimination over the rationals or a prime field.

Inputs are dense lists of rows whose entries are Fractions (char 0) or ints
in [0, p).  Only ranks and kernel dimensions are needed upstream.
"""


def rank(mat, p=0):
    rows = [list(r) for r in mat]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    r = 0
    for c in range(nc):
        pivot = None
        for i in range(r, nr):
            v = rows[i][c] % p if p else rows[i][c]
            if v:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        inv = pow(pv, p - 2, p) if p else None
        for i in range(r + 1, nr):
            v = rows[i][c]
            if p:
                v %= p
            if not v:
                continue
            factor = v * inv % p if p else v / pv
            if p:
                rows[i] = [(a - factor * b) % p for a, b in zip(rows[i], rows[r])]
            else:
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == nr:
            break
    return r


def kernel_dim(mat, cols, p=0):
    """Nullity of a matrix with the given column count (rows may be empty)."""
    return cols - rank(mat, p)
