"""Matrices over a polynomial ring and bounded cochain complexes of frees.

Complexes are cochain complexes: the differential at degree m maps degree m
to degree m+1 and composites are taken right to left, so the matrix of
d_{m+1} ∘ d_m is diff(m+1) * diff(m).  Matrices act on column vectors; a map
from a rank-c free module to a rank-r one is an r-by-c matrix, stored dense
row-major.
"""

from itertools import combinations

from koszulmf import linalg
from koszulmf.ring import Poly, evaluate


class PolyMatrix:
    """Dense matrix of Polys.  Shape is explicit so 0-by-n edges stay sane."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, rows, cols, entries):
        if rows < 0 or cols < 0:
            raise ValueError("negative shape")
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        for e in entries:
            if not isinstance(e, Poly) or e.ring != ring:
                raise ValueError("entries must be Polys over the matrix ring")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = list(entries)

    # --- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ring, rows, cols):
        z = Poly.zero(ring)
        return cls(ring, rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, ring, n):
        z, one = Poly.zero(ring), Poly.one(ring)
        return cls(ring, n, n, [one if i == j else z
                                for i in range(n) for j in range(n)])

    @classmethod
    def scalar(cls, ring, n, poly):
        z = Poly.zero(ring)
        return cls(ring, n, n, [poly if i == j else z
                                for i in range(n) for j in range(n)])

    @classmethod
    def from_rows(cls, ring, rowlists, cols=None):
        rows = len(rowlists)
        if cols is None:
            if rows == 0:
                raise ValueError("column count needed for empty matrix")
            cols = len(rowlists[0])
        flat = []
        for r in rowlists:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(ring, rows, cols, flat)

    @classmethod
    def block(cls, ring, grid, row_sizes, col_sizes):
        """Assemble from a grid of blocks; None means a zero block."""
        rows, cols = sum(row_sizes), sum(col_sizes)
        out = cls.zero(ring, rows, cols)
        r0 = 0
        for bi, rs in enumerate(row_sizes):
            c0 = 0
            for bj, cs in enumerate(col_sizes):
                blk = grid[bi][bj]
                if blk is not None:
                    if blk.rows != rs or blk.cols != cs:
                        raise ValueError(
                            f"block ({bi},{bj}) is {blk.rows}x{blk.cols}, "
                            f"slot is {rs}x{cs}")
                    for i in range(rs):
                        row = (r0 + i) * cols + c0
                        out.entries[row:row + cs] = \
                            [a for a in blk.entries[i * cs:(i + 1) * cs]]
                c0 += cs
            r0 += rs
        return out

    # --- access -------------------------------------------------------------

    def at(self, i, j):
        return self.entries[i * self.cols + j]

    def put(self, i, j, poly):
        self.entries[i * self.cols + j] = poly

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def submatrix(self, row_idx, col_idx):
        return PolyMatrix(self.ring, len(row_idx), len(col_idx),
                          [self.at(i, j) for i in row_idx for j in col_idx])

    # --- arithmetic ---------------------------------------------------------

    def __mul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * "
                             f"{other.rows}x{other.cols}")
        z = Poly.zero(self.ring)
        out = [z] * (self.rows * other.cols)
        # sparse-aware: most entries in this domain are zero
        for i in range(self.rows):
            arow = self.entries[i * self.cols:(i + 1) * self.cols]
            for k, a in enumerate(arow):
                if a.is_zero:
                    continue
                brow = other.entries[k * other.cols:(k + 1) * other.cols]
                base = i * other.cols
                for j, b in enumerate(brow):
                    if not b.is_zero:
                        out[base + j] = out[base + j] + a * b
        return PolyMatrix(self.ring, self.rows, other.cols, out)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return PolyMatrix(self.ring, self.rows, self.cols,
                          [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in subtraction")
        return PolyMatrix(self.ring, self.rows, self.cols,
                          [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return PolyMatrix(self.ring, self.rows, self.cols,
                          [-a for a in self.entries])

    def scale(self, poly):
        return PolyMatrix(self.ring, self.rows, self.cols,
                          [poly * a for a in self.entries])

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.ring == other.ring
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    @property
    def is_zero(self):
        return all(e.is_zero for e in self.entries)

    def evaluate(self, point):
        """List of rows of base-field scalars."""
        return [[evaluate(self.at(i, j), point) for j in range(self.cols)]
                for i in range(self.rows)]

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in self.row(i))
                         for i in range(self.rows))
        return f"PolyMatrix({self.rows}x{self.cols}: {body})"


class FreeComplex:
    """A bounded cochain complex of free modules.

    ranks maps each degree in [lo, hi] to a rank; diffs maps degree m to the
    matrix of d_m (shape rank(m+1) x rank(m)).  Degrees outside the window
    are rank zero.  The stored window may include zero ranks; `trim()`
    shrinks it.
    """

    __slots__ = ("ring", "lo", "hi", "ranks", "diffs")

    def __init__(self, ring, lo, hi, ranks, diffs):
        if lo > hi:
            raise ValueError("empty degree window")
        self.ring = ring
        self.lo = lo
        self.hi = hi
        self.ranks = {m: int(ranks[m]) for m in range(lo, hi + 1)}
        for m, r in self.ranks.items():
            if r < 0:
                raise ValueError(f"negative rank at degree {m}")
        self.diffs = {}
        for m in range(lo, hi):
            d = diffs.get(m)
            if d is None:
                d = PolyMatrix.zero(ring, self.ranks[m + 1], self.ranks[m])
            self.diffs[m] = d

    def rank(self, m):
        return self.ranks.get(m, 0)

    def diff(self, m):
        d = self.diffs.get(m)
        if d is None:
            return PolyMatrix.zero(self.ring, self.rank(m + 1), self.rank(m))
        return d

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def __eq__(self, other):
        return (isinstance(other, FreeComplex) and self.ring == other.ring
                and self.lo == other.lo and self.hi == other.hi
                and self.ranks == other.ranks and self.diffs == other.diffs)

    def trim(self):
        """Drop zero-rank degrees at both ends (keeps at least one degree)."""
        lo, hi = self.lo, self.hi
        while lo < hi and self.rank(lo) == 0:
            lo += 1
        while hi > lo and self.rank(hi) == 0:
            hi -= 1
        if (lo, hi) == (self.lo, self.hi):
            return self
        return FreeComplex(self.ring, lo, hi,
                           {m: self.rank(m) for m in range(lo, hi + 1)},
                           {m: self.diff(m) for m in range(lo, hi)})

    def __repr__(self):
        rs = " ".join(f"{m}:{self.rank(m)}" for m in self.degrees())
        return f"FreeComplex([{self.lo},{self.hi}] ranks {rs})"


def validate_complex(c):
    """Report of problems; empty list means the complex is valid."""
    report = []
    for m in range(c.lo, c.hi):
        d = c.diff(m)
        if (d.rows, d.cols) != (c.rank(m + 1), c.rank(m)):
            report.append(f"degree {m}: differential is {d.rows}x{d.cols}, "
                          f"want {c.rank(m + 1)}x{c.rank(m)}")
    if report:
        return report
    for m in range(c.lo, c.hi - 1):
        sq = c.diff(m + 1) * c.diff(m)
        if not sq.is_zero:
            report.append(f"degree {m}: d∘d is nonzero")
    return report


def shift_complex(c, k):
    """Degree shift: the result at degree m is c at degree m+k, and every
    differential picks up the sign (-1)^k."""
    sign = 1 if k % 2 == 0 else -1
    ranks = {m: c.rank(m + k) for m in range(c.lo - k, c.hi - k + 1)}
    diffs = {}
    for m in range(c.lo - k, c.hi - k):
        d = c.diff(m + k)
        diffs[m] = d if sign == 1 else -d
    return FreeComplex(c.ring, c.lo - k, c.hi - k, ranks, diffs)


class ChainMap:
    """A degree-0 map of complexes; component at m is rank_tgt(m) x rank_src(m)."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source, target, components):
        if source.ring != target.ring:
            raise ValueError("mixed rings")
        self.source = source
        self.target = target
        self.components = {}
        for m in range(min(source.lo, target.lo), max(source.hi, target.hi) + 1):
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


def validate_chain_map(g):
    report = []
    src, tgt = g.source, g.target
    for m, comp in g.components.items():
        if (comp.rows, comp.cols) != (tgt.rank(m), src.rank(m)):
            report.append(f"degree {m}: component is {comp.rows}x{comp.cols}, "
                          f"want {tgt.rank(m)}x{src.rank(m)}")
    if report:
        return report
    lo = min(src.lo, tgt.lo)
    hi = max(src.hi, tgt.hi)
    for m in range(lo, hi):
        lhs = tgt.diff(m) * g.component(m)
        rhs = g.component(m + 1) * src.diff(m)
        if lhs != rhs:
            report.append(f"degree {m}: square does not commute")
    return report


def cone_chain(g):
    """Mapping cone of a chain map; the shifted source block comes first."""
    src, tgt = g.source, g.target
    lo = min(src.lo - 1, tgt.lo)
    hi = max(src.hi - 1, tgt.hi)
    ranks = {m: src.rank(m + 1) + tgt.rank(m) for m in range(lo, hi + 1)}
    diffs = {}
    for m in range(lo, hi):
        diffs[m] = PolyMatrix.block(
            src.ring,
            [[-src.diff(m + 1), None],
             [g.component(m + 1), tgt.diff(m)]],
            [src.rank(m + 2), tgt.rank(m + 1)],
            [src.rank(m + 1), tgt.rank(m)])
    return FreeComplex(src.ring, lo, hi, ranks, diffs)


# ---------------------------------------------------------------------------
# Koszul complex of a potential tuple
# ---------------------------------------------------------------------------

def wedge_subsets(n, k):
    """Lex-ordered k-subsets of {0..n-1} (0-based internally)."""
    return list(combinations(range(n), k))


def koszul_complex(ring, potential):
    """The Koszul complex of f_1..f_n in degrees [-n, 0].

    Degree -k has one generator e_S per lex-ordered k-subset S and
    d(e_S) = sum_j (-1)^(j+1) f_{i_j} e_{S minus i_j}  for S = {i_1<...<i_k}.
    """
    n = len(potential)
    if n == 0:
        raise ValueError("potential must have at least one entry")
    for f in potential:
        if not isinstance(f, Poly) or f.ring != ring:
            raise ValueError("potential entries must be Polys over the ring")
    ranks = {}
    subsets = {}
    for k in range(n + 1):
        subsets[k] = wedge_subsets(n, k)
        ranks[-k] = len(subsets[k])
    diffs = {}
    for k in range(1, n + 1):
        # matrix of d_{-k}: degree -k -> degree -k+1
        src, tgt = subsets[k], subsets[k - 1]
        index = {S: i for i, S in enumerate(tgt)}
        mat = PolyMatrix.zero(ring, len(tgt), len(src))
        for col, S in enumerate(src):
            for j, i_j in enumerate(S):
                rest = tuple(x for x in S if x != i_j)
                coeff = potential[i_j] if j % 2 == 0 else -potential[i_j]
                row = index[rest]
                mat.put(row, col, mat.at(row, col) + coeff)
        diffs[-k] = mat
    return FreeComplex(ring, -n, 0, ranks, diffs)


# ---------------------------------------------------------------------------
# pointwise homology (used by quasi-isomorphism checks)
# ---------------------------------------------------------------------------

def homology_dims_at(c, point):
    """Dimensions of the cohomology of the evaluated complex, degree by degree."""
    p = c.ring.char
    out = {}
    for m in c.degrees():
        dm = c.diff(m).evaluate(point)
        din = c.diff(m - 1).evaluate(point) if m > c.lo else []
        ker = linalg.kernel_dim(dm, c.rank(m), p)
        im = linalg.rank(din, p) if din else 0
        out[m] = ker - im
    return out
