"""Koszul dg-modules: complexes with contraction operators for a potential.

A module here is a bounded free cochain complex (E, d) together with n
degree -1 operators h_1..h_n satisfying, exactly,

    h_i ∘ h_i = 0,   d ∘ h_i + h_i ∘ d = f_i · id,   h_i h_j + h_j h_i = 0,

for the potential tuple (f_1..f_n).  The free module on a complex carries
wedge coordinates: summands are ordered by descending exterior degree k,
subsets of {1..n} in lex order within each k, then the basis of the
underlying free module.  That order reproduces the classical block shapes
(for n=1: [[-d, 0], [f, d]] with the wedge part first).
"""

from itertools import combinations

from koszulmf.complexes import (ChainMap, FreeComplex, PolyMatrix,
                                cone_chain, homology_dims_at, shift_complex,
                                validate_chain_map, validate_complex)
from koszulmf.ring import Poly, polynomial_ring


def kron(a, b):
    """Kronecker product, left factor major."""
    if a.ring != b.ring:
        raise ValueError("mixed rings")
    rows, cols = a.rows * b.rows, a.cols * b.cols
    out = PolyMatrix.zero(a.ring, rows, cols)
    for ia in range(a.rows):
        for ja in range(a.cols):
            e = a.at(ia, ja)
            if e.is_zero:
                continue
            for ib in range(b.rows):
                for jb in range(b.cols):
                    g = b.at(ib, jb)
                    if not g.is_zero:
                        out.put(ia * b.rows + ib, ja * b.cols + jb, e * g)
    return out


class KoszulModule:
    __slots__ = ("ring", "potential", "underlying", "h")

    def __init__(self, ring, potential, underlying, h):
        potential = tuple(potential)
        if not potential:
            raise ValueError("potential must be nonempty")
        for f in potential:
            if not isinstance(f, Poly) or f.ring != ring:
                raise ValueError("potential entries must be Polys over the ring")
        if underlying.ring != ring:
            raise ValueError("underlying complex has a different ring")
        if len(h) != len(potential):
            raise ValueError(f"need {len(potential)} h-families, got {len(h)}")
        self.ring = ring
        self.potential = potential
        self.underlying = underlying
        self.h = []
        for hi in h:
            fam = {}
            for m in range(underlying.lo, underlying.hi + 1):
                g = hi.get(m)
                if g is None:
                    g = PolyMatrix.zero(ring, underlying.rank(m - 1),
                                        underlying.rank(m))
                fam[m] = g
            self.h.append(fam)

    @property
    def n(self):
        return len(self.potential)

    @property
    def lo(self):
        return self.underlying.lo

    @property
    def hi(self):
        return self.underlying.hi

    @property
    def amplitude(self):
        return self.hi - self.lo + 1

    def rank(self, m):
        return self.underlying.rank(m)

    def diff(self, m):
        return self.underlying.diff(m)

    def hop(self, i, m):
        g = self.h[i].get(m)
        if g is None:
            return PolyMatrix.zero(self.ring, self.rank(m - 1), self.rank(m))
        return g

    def __eq__(self, other):
        return (isinstance(other, KoszulModule) and self.ring == other.ring
                and self.potential == other.potential
                and self.underlying == other.underlying
                and self.h == other.h)

    def trim(self):
        u = self.underlying.trim()
        if u is self.underlying:
            return self
        return KoszulModule(
            self.ring, self.potential, u,
            [{m: self.hop(i, m) for m in range(u.lo, u.hi + 1)}
             for i in range(self.n)])

    def __repr__(self):
        return (f"KoszulModule(n={self.n}, "
                f"[{self.lo},{self.hi}] ranks "
                + " ".join(str(self.rank(m)) for m in self.underlying.degrees())
                + ")")


def validate_koszul(m):
    """Report of broken axioms; empty means valid."""
    report = [f"underlying: {r}" for r in validate_complex(m.underlying)]
    for i in range(m.n):
        for deg in range(m.lo, m.hi + 1):
            g = m.hop(i, deg)
            want = (m.rank(deg - 1), m.rank(deg))
            if (g.rows, g.cols) != want:
                report.append(f"h_{i + 1} at degree {deg}: shape "
                              f"{g.rows}x{g.cols}, want {want[0]}x{want[1]}")
    if report:
        return report
    for i in range(m.n):
        f = m.potential[i]
        for deg in range(m.lo, m.hi + 1):
            sq = m.hop(i, deg - 1) * m.hop(i, deg)
            if not sq.is_zero:
                report.append(f"h_{i + 1} squares to nonzero at degree {deg}")
            anti = m.diff(deg - 1) * m.hop(i, deg) + m.hop(i, deg + 1) * m.diff(deg)
            if anti != PolyMatrix.scalar(m.ring, m.rank(deg), f):
                report.append(
                    f"d h_{i + 1} + h_{i + 1} d is not f_{i + 1}·id at degree {deg}")
        for j in range(i + 1, m.n):
            for deg in range(m.lo, m.hi + 1):
                mixed = (m.hop(i, deg - 1) * m.hop(j, deg)
                         + m.hop(j, deg - 1) * m.hop(i, deg))
                if not mixed.is_zero:
                    report.append(f"h_{i + 1} and h_{j + 1} fail to anticommute "
                                  f"at degree {deg}")
    return report


# ---------------------------------------------------------------------------
# the free module on a complex
# ---------------------------------------------------------------------------

def fk_layout(e, n, u):
    """Coordinate blocks of the free module at degree u.

    Returns a list of (k, S, edeg, rank): exterior degree k descending,
    k-subsets S of {0..n-1} lex within each k, underlying degree edeg = u+k.
    """
    out = []
    for k in range(n, -1, -1):
        for S in combinations(range(n), k):
            out.append((k, S, u + k, e.rank(u + k)))
    return out


def _insert_sign(S, i):
    """Sign of wedging e_i onto e_S from the left, None if i in S."""
    if i in S:
        return None
    return -1 if sum(1 for x in S if x < i) % 2 else 1


def free_koszul(e, potential):
    """The free Koszul module on a complex for the given potential.

    The differential twists by the exterior degree and contracts against the
    potential; h_i is wedging with the i-th generator.
    """
    ring = e.ring
    n = len(potential)
    if n == 0:
        raise ValueError("potential must be nonempty")
    lo, hi = e.lo - n, e.hi
    layouts = {u: fk_layout(e, n, u) for u in range(lo - 1, hi + 2)}
    ranks = {u: sum(r for (_, _, _, r) in layouts[u]) for u in range(lo, hi + 1)}

    def idx(layout):
        return {(k, S): pos for pos, (k, S, _, _) in enumerate(layout)}

    diffs = {}
    for u in range(lo, hi):
        src, tgt = layouts[u], layouts[u + 1]
        tpos = idx(tgt)
        grid = [[None] * len(src) for _ in tgt]
        for col, (k, S, edeg, r) in enumerate(src):
            if r == 0:
                continue
            # (-1)^k d on the same wedge coordinates
            row = tpos[(k, S)]
            d = e.diff(edeg)
            grid[row][col] = d if k % 2 == 0 else -d
            # contraction against the potential
            for j, i_j in enumerate(S):
                rest = tuple(x for x in S if x != i_j)
                row = tpos[(k - 1, rest)]
                f = potential[i_j] if j % 2 == 0 else -potential[i_j]
                blk = PolyMatrix.scalar(ring, r, f)
                grid[row][col] = blk if grid[row][col] is None else grid[row][col] + blk
        diffs[u] = PolyMatrix.block(ring, grid,
                                    [r for (_, _, _, r) in tgt],
                                    [r for (_, _, _, r) in src])

    h = []
    for i in range(n):
        fam = {}
        for u in range(lo, hi + 1):
            src, tgt = layouts[u], layouts[u - 1]
            tpos = idx(tgt)
            grid = [[None] * len(src) for _ in tgt]
            for col, (k, S, edeg, r) in enumerate(src):
                if r == 0 or k == n:
                    continue
                sign = _insert_sign(S, i)
                if sign is None:
                    continue
                wedged = tuple(sorted(S + (i,)))
                row = tpos[(k + 1, wedged)]
                one = Poly.one(ring) if sign > 0 else -Poly.one(ring)
                grid[row][col] = PolyMatrix.scalar(ring, r, one)
            fam[u] = PolyMatrix.block(ring, grid,
                                      [r for (_, _, _, r) in tgt],
                                      [r for (_, _, _, r) in src])
        h.append(fam)

    underlying = FreeComplex(ring, lo, hi, ranks, diffs)
    return KoszulModule(ring, potential, underlying, h)


# ---------------------------------------------------------------------------
# morphisms, the counit, cones
# ---------------------------------------------------------------------------

class KoszulMorphism:
    __slots__ = ("source", "target", "components")

    def __init__(self, source, target, components):
        if source.ring != target.ring:
            raise ValueError("mixed rings")
        if source.potential != target.potential:
            raise ValueError("sources of a morphism must share the potential")
        self.source = source
        self.target = target
        self.components = {}
        lo = min(source.lo, target.lo)
        hi = max(source.hi, target.hi)
        for m in range(lo, hi + 1):
            g = components.get(m)
            if g is None:
                g = PolyMatrix.zero(source.ring, target.rank(m), source.rank(m))
            self.components[m] = g

    def component(self, m):
        g = self.components.get(m)
        if g is None:
            return PolyMatrix.zero(self.source.ring,
                                   self.target.rank(m), self.source.rank(m))
        return g

    def chain_map(self):
        return ChainMap(self.source.underlying, self.target.underlying,
                        dict(self.components))


def validate_koszul_morphism(g):
    report = []
    src, tgt = g.source, g.target
    for m, comp in g.components.items():
        want = (tgt.rank(m), src.rank(m))
        if (comp.rows, comp.cols) != want:
            report.append(f"degree {m}: component is {comp.rows}x{comp.cols}, "
                          f"want {want[0]}x{want[1]}")
    if report:
        return report
    report.extend(validate_chain_map(g.chain_map()))
    lo = min(src.lo, tgt.lo)
    hi = max(src.hi, tgt.hi)
    for i in range(src.n):
        for m in range(lo, hi + 1):
            lhs = tgt.hop(i, m) * g.component(m)
            rhs = g.component(m - 1) * src.hop(i, m)
            if lhs != rhs:
                report.append(f"degree {m}: component does not intertwine "
                              f"h_{i + 1}")
    return report


def compose_koszul_morphisms(b, a):
    """b after a; endpoints must line up."""
    if a.target != b.source:
        raise ValueError("morphisms do not compose")
    lo = min(a.source.lo, b.target.lo)
    hi = max(a.source.hi, b.target.hi)
    comps = {m: b.component(m) * a.component(m) for m in range(lo, hi + 1)}
    return KoszulMorphism(a.source, b.target, comps)


def counit_map(m):
    """The canonical map from the free module on the underlying complex.

    On a wedge coordinate x ⊗ e_{i1..ik} it applies the contraction
    operators in order, innermost last: h_{i1} ∘ ... ∘ h_{ik} (x); on the
    exterior-degree-0 part it is the identity.
    """
    free = free_koszul(m.underlying, m.potential)
    e = m.underlying
    n = m.n
    comps = {}
    for u in range(free.lo, free.hi + 1):
        layout = fk_layout(e, n, u)
        grid = [[None] * len(layout)]
        for col, (k, S, edeg, r) in enumerate(layout):
            if r == 0:
                continue
            # h_{i1}(u+1) * h_{i2}(u+2) * ... * h_{ik}(u+k); identity for k=0
            prod = PolyMatrix.identity(m.ring, e.rank(u))
            for pos, i_j in enumerate(S):
                prod = prod * m.hop(i_j, u + pos + 1)
            grid[0][col] = prod
        comps[u] = PolyMatrix.block(m.ring, grid, [e.rank(u)],
                                    [r for (_, _, _, r) in layout])
    return KoszulMorphism(free, m, comps)


def cone_koszul(g):
    """Mapping cone of a Koszul morphism; shifted source block first."""
    src, tgt = g.source, g.target
    ring = src.ring
    lo = min(src.lo - 1, tgt.lo)
    hi = max(src.hi - 1, tgt.hi)
    ranks = {m: src.rank(m + 1) + tgt.rank(m) for m in range(lo, hi + 1)}
    diffs = {}
    for m in range(lo, hi):
        diffs[m] = PolyMatrix.block(
            ring,
            [[-src.diff(m + 1), None],
             [g.component(m + 1), tgt.diff(m)]],
            [src.rank(m + 2), tgt.rank(m + 1)],
            [src.rank(m + 1), tgt.rank(m)])
    h = []
    for i in range(src.n):
        fam = {}
        for m in range(lo, hi + 1):
            fam[m] = PolyMatrix.block(
                ring,
                [[-src.hop(i, m + 1), None],
                 [None, tgt.hop(i, m)]],
                [src.rank(m), tgt.rank(m - 1)],
                [src.rank(m + 1), tgt.rank(m)])
        h.append(fam)
    underlying = FreeComplex(ring, lo, hi, ranks, diffs)
    return KoszulModule(ring, src.potential, underlying, h)


def shift_koszul(m, k):
    """Degree shift by k: matrices pick up (-1)^k, degrees drop by k."""
    u = m.underlying
    shifted = shift_complex(u, k)
    sign = 1 if k % 2 == 0 else -1
    h = []
    for i in range(m.n):
        fam = {}
        for deg in range(shifted.lo, shifted.hi + 1):
            g = m.hop(i, deg + k)
            fam[deg] = g if sign == 1 else -g
        h.append(fam)
    return KoszulModule(m.ring, m.potential, shifted, h)


# ---------------------------------------------------------------------------
# external tensor product
# ---------------------------------------------------------------------------

def _merge_rings(ra, rb):
    """Polynomial ring on the disjoint union of variables, left vars first."""
    base_a, base_b = ra.base_field, rb.base_field
    if base_a != base_b:
        raise ValueError("tensor factors must share the base field")
    va, vb = ra.varnames, rb.varnames
    if set(va) & set(vb):
        raise ValueError(f"variable names collide: {sorted(set(va) & set(vb))}")
    merged_vars = va + vb
    if not merged_vars:
        return base_a
    return polynomial_ring(base_a, merged_vars)


def _promote(poly, merged, offset, total):
    """Re-embed a polynomial into the merged ring at a variable offset."""
    pad_left, pad_right = offset, total - offset - len(poly.ring.varnames)
    terms = {}
    for exps, c in poly.terms.items():
        terms[(0,) * pad_left + exps + (0,) * pad_right] = c
    return Poly(merged, terms)


def box_tensor(a, b):
    """External tensor product over the merged polynomial ring.

    Degrees add; the potential is the sum of the promoted potentials entry
    by entry; the second factor's differential and contractions acquire the
    sign of the first factor's degree.
    """
    if a.n != b.n:
        raise ValueError("tensor factors must have the same potential length")
    merged = _merge_rings(a.ring, b.ring)
    total = len(merged.varnames)
    off_b = len(a.ring.varnames)

    def pa(poly):
        return _promote(poly, merged, 0, total)

    def pb(poly):
        return _promote(poly, merged, off_b, total)

    potential = tuple(pa(f) + pb(g) for f, g in zip(a.potential, b.potential))

    lo, hi = a.lo + b.lo, a.hi + b.hi
    # summands (p, q) with p+q = m, ascending in p; Kronecker a-major inside
    def layout(m):
        out = []
        for p in range(a.lo, a.hi + 1):
            q = m - p
            if b.lo <= q <= b.hi:
                out.append((p, q, a.rank(p) * b.rank(q)))
        return out

    def promote_mat(mat, which):
        f = pa if which == "a" else pb
        return PolyMatrix(merged, mat.rows, mat.cols, [f(e) for e in mat.entries])

    ranks = {m: sum(r for (_, _, r) in layout(m)) for m in range(lo, hi + 1)}
    diffs = {}
    hfams = [dict() for _ in range(a.n)]
    for m in range(lo, hi + 1):
        src = layout(m)
        if m < hi:
            tgt = layout(m + 1)
            tpos = {(p, q): i for i, (p, q, _) in enumerate(tgt)}
            grid = [[None] * len(src) for _ in tgt]
            for col, (p, q, r) in enumerate(src):
                if r == 0:
                    continue
                if (p + 1, q) in tpos:
                    blk = kron(promote_mat(a.diff(p), "a"),
                               PolyMatrix.identity(merged, b.rank(q)))
                    grid[tpos[(p + 1, q)]][col] = blk
                if (p, q + 1) in tpos:
                    blk = kron(PolyMatrix.identity(merged, a.rank(p)),
                               promote_mat(b.diff(q), "b"))
                    grid[tpos[(p, q + 1)]][col] = blk if p % 2 == 0 else -blk
            diffs[m] = PolyMatrix.block(merged, grid,
                                        [r for (_, _, r) in tgt],
                                        [r for (_, _, r) in src])
        tgt = layout(m - 1)
        tpos = {(p, q): i for i, (p, q, _) in enumerate(tgt)}
        for i in range(a.n):
            grid = [[None] * len(src) for _ in tgt]
            for col, (p, q, r) in enumerate(src):
                if r == 0:
                    continue
                if (p - 1, q) in tpos:
                    blk = kron(promote_mat(a.hop(i, p), "a"),
                               PolyMatrix.identity(merged, b.rank(q)))
                    grid[tpos[(p - 1, q)]][col] = blk
                if (p, q - 1) in tpos:
                    blk = kron(PolyMatrix.identity(merged, a.rank(p)),
                               promote_mat(b.hop(i, q), "b"))
                    grid[tpos[(p, q - 1)]][col] = blk if p % 2 == 0 else -blk
            hfams[i][m] = PolyMatrix.block(merged, grid,
                                           [r for (_, _, r) in tgt],
                                           [r for (_, _, r) in src])
    underlying = FreeComplex(merged, lo, hi, ranks, diffs)
    return KoszulModule(merged, potential, underlying, hfams)


# ---------------------------------------------------------------------------
# pointwise acyclicity of a morphism's cone (quasi-isomorphism evidence)
# ---------------------------------------------------------------------------

def cone_acyclic_at(g, point):
    """True when the cone of the underlying chain map is exact at the point."""
    cone = cone_chain(g.chain_map())
    dims = homology_dims_at(cone, point)
    return all(v == 0 for v in dims.values())
