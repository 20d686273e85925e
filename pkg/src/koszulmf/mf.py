"""Matrix factorizations of a single potential, and the folding equivalence.

A factorization is a pair of free modules E0, E1 with maps
phi0 : E0 -> E1 and phi1 : E1 -> E0 composing to f times the identity both
ways.  Folding turns a one-potential Koszul module into a factorization by
summing even degrees into E0 and odd degrees into E1 (each in ascending
degree order) and assembling d + h into the two maps; unfolding is the
two-term inverse.
"""

from koszulmf import linalg
from koszulmf.complexes import FreeComplex, PolyMatrix
from koszulmf.koszul import KoszulModule, kron
from koszulmf.ring import Poly, evaluate


class MFObject:
    __slots__ = ("ring", "potential", "r0", "r1", "phi0", "phi1")

    def __init__(self, ring, potential, r0, r1, phi0, phi1):
        if not isinstance(potential, Poly) or potential.ring != ring:
            raise ValueError("potential must be a Poly over the ring")
        if (phi0.rows, phi0.cols) != (r1, r0):
            raise ValueError(f"phi0 is {phi0.rows}x{phi0.cols}, want {r1}x{r0}")
        if (phi1.rows, phi1.cols) != (r0, r1):
            raise ValueError(f"phi1 is {phi1.rows}x{phi1.cols}, want {r0}x{r1}")
        self.ring = ring
        self.potential = potential
        self.r0 = r0
        self.r1 = r1
        self.phi0 = phi0
        self.phi1 = phi1

    def __eq__(self, other):
        return (isinstance(other, MFObject) and self.ring == other.ring
                and self.potential == other.potential
                and (self.r0, self.r1) == (other.r0, other.r1)
                and self.phi0 == other.phi0 and self.phi1 == other.phi1)

    def __repr__(self):
        return f"MFObject(f={self.potential}, ranks ({self.r0},{self.r1}))"


class MFMorphism:
    """Degree-0 morphism: alpha0 on the even parts, alpha1 on the odd parts."""

    __slots__ = ("source", "target", "alpha0", "alpha1")

    def __init__(self, source, target, alpha0, alpha1):
        if source.ring != target.ring or source.potential != target.potential:
            raise ValueError("morphism endpoints must share ring and potential")
        if (alpha0.rows, alpha0.cols) != (target.r0, source.r0):
            raise ValueError("alpha0 shape mismatch")
        if (alpha1.rows, alpha1.cols) != (target.r1, source.r1):
            raise ValueError("alpha1 shape mismatch")
        self.source = source
        self.target = target
        self.alpha0 = alpha0
        self.alpha1 = alpha1

    def __eq__(self, other):
        return (isinstance(other, MFMorphism) and self.source == other.source
                and self.target == other.target
                and self.alpha0 == other.alpha0 and self.alpha1 == other.alpha1)


def validate_mf(m):
    report = []
    f0 = PolyMatrix.scalar(m.ring, m.r0, m.potential)
    f1 = PolyMatrix.scalar(m.ring, m.r1, m.potential)
    if m.phi1 * m.phi0 != f0:
        report.append("phi1∘phi0 is not f·id on the even part")
    if m.phi0 * m.phi1 != f1:
        report.append("phi0∘phi1 is not f·id on the odd part")
    return report


def validate_mf_morphism(a):
    report = []
    s, t = a.source, a.target
    if t.phi0 * a.alpha0 != a.alpha1 * s.phi0:
        report.append("even square does not commute")
    if t.phi1 * a.alpha1 != a.alpha0 * s.phi1:
        report.append("odd square does not commute")
    return report


def mf_shift(m):
    """Swap the parities and negate both maps; an involution on the nose."""
    return MFObject(m.ring, m.potential, m.r1, m.r0, -m.phi1, -m.phi0)


def mf_cone(a):
    """Mapping cone of a closed degree-0 morphism of factorizations."""
    s, t = a.source, a.target
    ring = s.ring
    phi0 = PolyMatrix.block(
        ring,
        [[t.phi0, a.alpha1],
         [None, -s.phi1]],
        [t.r1, s.r0], [t.r0, s.r1])
    phi1 = PolyMatrix.block(
        ring,
        [[t.phi1, a.alpha0],
         [None, -s.phi0]],
        [t.r0, s.r1], [t.r1, s.r0])
    return MFObject(ring, s.potential, t.r0 + s.r1, t.r1 + s.r0, phi0, phi1)


def mf_direct_sum(m1, m2):
    if m1.ring != m2.ring or m1.potential != m2.potential:
        raise ValueError("direct sum needs matching ring and potential")
    ring = m1.ring
    phi0 = PolyMatrix.block(ring, [[m1.phi0, None], [None, m2.phi0]],
                            [m1.r1, m2.r1], [m1.r0, m2.r0])
    phi1 = PolyMatrix.block(ring, [[m1.phi1, None], [None, m2.phi1]],
                            [m1.r0, m2.r0], [m1.r1, m2.r1])
    return MFObject(ring, m1.potential, m1.r0 + m2.r0, m1.r1 + m2.r1,
                    phi0, phi1)


def mf_tensor(a, b):
    """Tensor product; the potentials add.

    Even part (E0⊗F0) ⊕ (E1⊗F1), odd part (E0⊗F1) ⊕ (E1⊗F0); the second
    factor's maps act with a sign on the odd rows of the first.  Factors over
    the same ring stay over that ring; otherwise the variable lists must be
    disjoint and are concatenated.
    """
    from koszulmf.koszul import _merge_rings, _promote

    if a.ring == b.ring:
        merged = a.ring

        def pa(m):
            return m

        pb = pa
        f = a.potential + b.potential
    else:
        merged = _merge_rings(a.ring, b.ring)
        total = len(merged.varnames)
        off = len(a.ring.varnames)

        def pa(m):
            return PolyMatrix(merged, m.rows, m.cols,
                              [_promote(e, merged, 0, total)
                               for e in m.entries])

        def pb(m):
            return PolyMatrix(merged, m.rows, m.cols,
                              [_promote(e, merged, off, total)
                               for e in m.entries])

        f = (_promote(a.potential, merged, 0, total)
             + _promote(b.potential, merged, off, total))
    p0, p1 = pa(a.phi0), pa(a.phi1)
    q0, q1 = pb(b.phi0), pb(b.phi1)
    i_r0 = PolyMatrix.identity(merged, a.r0)
    i_r1 = PolyMatrix.identity(merged, a.r1)
    i_s0 = PolyMatrix.identity(merged, b.r0)
    i_s1 = PolyMatrix.identity(merged, b.r1)
    # rows (E0⊗F1, E1⊗F0), cols (E0⊗F0, E1⊗F1)
    t0 = PolyMatrix.block(
        merged,
        [[kron(i_r0, q0), kron(p1, i_s1)],
         [kron(p0, i_s0), -kron(i_r1, q1)]],
        [a.r0 * b.r1, a.r1 * b.r0], [a.r0 * b.r0, a.r1 * b.r1])
    # rows (E0⊗F0, E1⊗F1), cols (E0⊗F1, E1⊗F0)
    t1 = PolyMatrix.block(
        merged,
        [[kron(i_r0, q1), kron(p1, i_s0)],
         [kron(p0, i_s1), -kron(i_r1, q0)]],
        [a.r0 * b.r0, a.r1 * b.r1], [a.r0 * b.r1, a.r1 * b.r0])
    return MFObject(merged, f, a.r0 * b.r0 + a.r1 * b.r1,
                    a.r0 * b.r1 + a.r1 * b.r0, t0, t1)


# ---------------------------------------------------------------------------
# folding
# ---------------------------------------------------------------------------

def _fold_layout(m):
    """Even and odd degree lists, ascending."""
    evens = [deg for deg in range(m.lo, m.hi + 1) if deg % 2 == 0]
    odds = [deg for deg in range(m.lo, m.hi + 1) if deg % 2 != 0]
    return evens, odds


def orlov_fold(m):
    """Fold a one-potential module into a factorization of its potential.

    Block from degree u to degree v is d_u when v = u+1 and h_u when
    v = u-1; all other blocks vanish.  Summands are ascending in degree.
    """
    if m.n != 1:
        raise ValueError("folding needs a single potential entry")
    evens, odds = _fold_layout(m)
    ring = m.ring

    def assemble(srcs, tgts):
        grid = []
        for v in tgts:
            row = []
            for u in srcs:
                if v == u + 1:
                    row.append(m.diff(u))
                elif v == u - 1:
                    row.append(m.hop(0, u))
                else:
                    row.append(None)
            grid.append(row)
        return PolyMatrix.block(ring, grid,
                                [m.rank(v) for v in tgts],
                                [m.rank(u) for u in srcs])

    phi0 = assemble(evens, odds)
    phi1 = assemble(odds, evens)
    r0 = sum(m.rank(u) for u in evens)
    r1 = sum(m.rank(u) for u in odds)
    return MFObject(ring, m.potential[0], r0, r1, phi0, phi1)


def orlov_unfold(mf):
    """The two-term module in degrees [-1, 0] with d = phi1 and h = phi0."""
    ring = mf.ring
    underlying = FreeComplex(ring, -1, 0, {-1: mf.r1, 0: mf.r0},
                             {-1: mf.phi1})
    h = [{0: mf.phi0,
          -1: PolyMatrix.zero(ring, 0, mf.r1)}]
    return KoszulModule(ring, (mf.potential,), underlying, h)


def fold_morphism(g):
    """Fold a morphism of one-potential modules degreewise."""
    src, tgt = g.source, g.target
    if src.n != 1:
        raise ValueError("folding needs a single potential entry")
    lo = min(src.lo, tgt.lo)
    hi = max(src.hi, tgt.hi)
    evens = [deg for deg in range(lo, hi + 1) if deg % 2 == 0]
    odds = [deg for deg in range(lo, hi + 1) if deg % 2 != 0]
    ring = src.ring

    def assemble(degs):
        grid = []
        for v in degs:
            grid.append([g.component(u) if u == v else None for u in degs])
        return PolyMatrix.block(ring, grid,
                                [tgt.rank(v) for v in degs],
                                [src.rank(u) for u in degs])

    return MFMorphism(orlov_fold(src), orlov_fold(tgt),
                      assemble(evens), assemble(odds))


def compose_mf_morphisms(b, a):
    """b ∘ a."""
    if a.target != b.source:
        raise ValueError("morphisms do not compose")
    return MFMorphism(a.source, b.target, b.alpha0 * a.alpha0,
                      b.alpha1 * a.alpha1)


def residue_homology(m, point):
    """Even and odd homology dimensions of the factorization at a point.

    The point must lie on the hypersurface; otherwise the evaluated value of
    the potential is reported in the error.
    """
    val = evaluate(m.potential, point)
    if val != 0:
        raise ValueError(f"point is not on the hypersurface: potential "
                         f"evaluates to {val}")
    p = m.ring.char
    phi0 = m.phi0.evaluate(point)
    phi1 = m.phi1.evaluate(point)
    rk0 = linalg.rank(phi0, p)
    rk1 = linalg.rank(phi1, p)
    even = m.r0 - rk0 - rk1
    odd = m.r1 - rk1 - rk0
    return even, odd
