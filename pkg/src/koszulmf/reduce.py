"""Witnessed reductions: amplitude, codimension, and folding with a log.

Every reduction is a chain of three primitive moves, each independently
re-checkable from its serialized payload:

  cone_off_free     endpoints differ by the cone on a morphism whose source
                    is the free module on a stored generating complex;
                    forward = cone on, backward = split the free summand off.
  explicit_quasi_iso  endpoints joined by an explicit morphism that is a
                    strict chain map and h-equivariant; quasi-isomorphism
                    evidence is pointwise (homology of the evaluated cone).
  shift_by_two      degree shift by an even offset; matrices unchanged.

A log composes strictly: applying each step to its input must reproduce the
recorded chain, with exact matrix equality at every joint.  Splitting a free
summand off a cone needs a basis permutation first (the free block sits in
mid coordinates); that permutation is emitted as its own explicit_quasi_iso
step rather than silently rebasing.
"""

from koszulmf.complexes import FreeComplex, PolyMatrix
from koszulmf.koszul import (KoszulModule, KoszulMorphism, cone_acyclic_at,
                             cone_koszul, counit_map, fk_layout, free_koszul,
                             shift_koszul, validate_koszul_morphism)
from koszulmf.mf import MFMorphism, orlov_fold
from koszulmf.ring import Poly, evaluate, polynomial_ring


class WitnessError(RuntimeError):
    """A reduction step failed to validate while being built; internal."""


class AmplitudeMinimalError(ValueError):
    """Raised when a one-step reduction is requested at minimal amplitude."""


class WitnessStep:
    __slots__ = ("kind", "orientation", "morphism", "generators", "offset")

    def __init__(self, kind, orientation, morphism=None, generators=None,
                 offset=None):
        if kind not in ("cone_off_free", "explicit_quasi_iso", "shift_by_two"):
            raise ValueError(f"unknown step kind {kind!r}")
        if orientation not in ("forward", "backward"):
            raise ValueError(f"unknown orientation {orientation!r}")
        self.kind = kind
        self.orientation = orientation
        self.morphism = morphism
        self.generators = generators
        self.offset = offset

    def __repr__(self):
        return f"WitnessStep({self.kind}, {self.orientation})"


class WitnessLog:
    __slots__ = ("start", "end", "steps")

    def __init__(self, start, end, steps):
        self.start = start
        self.end = end
        self.steps = list(steps)

    def __len__(self):
        return len(self.steps)


def apply_step(step, current):
    """Apply a step to a module, checking the strict part of its contract."""
    if step.kind == "cone_off_free":
        psi = step.morphism
        free = free_koszul(step.generators, current.potential)
        if free != psi.source:
            raise WitnessError("stored source is not the free module on the "
                               "stored generators")
        rep = validate_koszul_morphism(psi)
        if rep:
            raise WitnessError(f"cone-off morphism invalid: {rep[0]}")
        cone = cone_koszul(psi)
        if step.orientation == "forward":
            if psi.target != current:
                raise WitnessError("cone-off target does not match the module")
            return cone
        if cone != current:
            raise WitnessError("module is not the cone on the stored morphism")
        return psi.target
    if step.kind == "explicit_quasi_iso":
        g = step.morphism
        rep = validate_koszul_morphism(g)
        if rep:
            raise WitnessError(f"quasi-isomorphism invalid: {rep[0]}")
        if step.orientation == "forward":
            if g.source != current:
                raise WitnessError("morphism source does not match the module")
            return g.target
        if g.target != current:
            raise WitnessError("morphism target does not match the module")
        return g.source
    # shift_by_two
    if step.offset % 2 != 0:
        raise WitnessError("shift offset must be even")
    return shift_koszul(current, step.offset)


def validate_log(log, points=None):
    """Full re-validation of a log.  Returns a report; empty means valid."""
    points = points or []
    report = []
    current = log.start
    for i, step in enumerate(log.steps):
        try:
            nxt = apply_step(step, current)
        except WitnessError as e:
            report.append(f"step {i} ({step.kind}): {e}")
            return report
        if step.kind == "explicit_quasi_iso":
            for j, pt in enumerate(points):
                if not cone_acyclic_at(step.morphism, pt):
                    report.append(f"step {i} ({step.kind}): cone homology "
                                  f"does not vanish at point {j}")
        current = nxt
    if current != log.end:
        report.append("chain result does not equal the recorded end module")
    return report


# ---------------------------------------------------------------------------
# generic machinery: slots, permutations, splitting, graph truncation
# ---------------------------------------------------------------------------
#
# A "slot table" maps each degree of a module under construction to an
# ordered list of (tag, size) coordinate blocks.  Tags name where a block
# came from: ("fk", k, S, edeg) for a wedge block of the counit cone,
# ("e", edeg) for a block of the original module.

def _cone_counit_slots(x):
    n = x.n
    slots = {}
    for s in range(x.lo - n - 1, x.hi + 1):
        row = [(("fk", k, S, edeg), r)
               for (k, S, edeg, r) in fk_layout(x.underlying, n, s + 1)]
        row.append((("e", s), x.rank(s)))
        slots[s] = row
    return slots


def _positions(slotrow, want):
    """Column indices covered by the tags in `want` (a set), in order."""
    out = []
    pos = 0
    for tag, size in slotrow:
        if tag in want:
            out.extend(range(pos, pos + size))
        pos += size
    return out


def _module_from(ring, potential, lo, hi, ranks, diffs, hfams):
    underlying = FreeComplex(ring, lo, hi, ranks, diffs)
    return KoszulModule(ring, potential, underlying, hfams)


def _permute_module(x, orders):
    """Conjugate by degreewise basis permutations.

    orders[s] lists old indices in their new order.  Returns the permuted
    module and the permutation matrices (as the morphism components x -> x').
    """
    ring = x.ring

    def pmat(s):
        order = orders.get(s)
        r = x.rank(s)
        if order is None:
            return PolyMatrix.identity(ring, r)
        mat = PolyMatrix.zero(ring, r, r)
        one = Poly.one(ring)
        for new, old in enumerate(order):
            mat.put(new, old, one)
        return mat

    mats = {s: pmat(s) for s in range(x.lo, x.hi + 1)}

    def inv(s):
        mat = mats.get(s)
        if mat is None:
            return PolyMatrix.identity(ring, x.rank(s))
        out = PolyMatrix.zero(ring, mat.cols, mat.rows)
        for i in range(mat.rows):
            for j in range(mat.cols):
                out.put(j, i, mat.at(i, j))
        return out

    ranks = {s: x.rank(s) for s in range(x.lo, x.hi + 1)}
    diffs = {}
    for s in range(x.lo, x.hi):
        pm_next = mats.get(s + 1, PolyMatrix.identity(ring, x.rank(s + 1)))
        diffs[s] = pm_next * x.diff(s) * inv(s)
    hfams = []
    for i in range(x.n):
        fam = {}
        for s in range(x.lo, x.hi + 1):
            pm_prev = mats.get(s - 1, PolyMatrix.identity(ring, x.rank(s - 1)))
            fam[s] = pm_prev * x.hop(i, s) * inv(s)
        hfams.append(fam)
    permuted = _module_from(ring, x.potential, x.lo, x.hi, ranks, diffs, hfams)
    return permuted, mats


def _split_off_free(x, slots, p_tags, gens):
    """Split off the shifted free module on `gens` sitting in the p-tagged
    coordinates of x.  Emits [permutation?, backward cone_off_free] and
    returns (steps, remainder, remainder_slots)."""
    ring = x.ring
    p_cols = {}
    orders = {}
    nontrivial = False
    for s in range(x.lo, x.hi + 1):
        pc = _positions(slots[s], p_tags)
        rest = [i for i in range(x.rank(s)) if i not in set(pc)]
        p_cols[s] = pc
        orders[s] = pc + rest
        if orders[s] != list(range(x.rank(s))):
            nontrivial = True

    steps = []
    if nontrivial:
        xp, mats = _permute_module(x, orders)
        perm = KoszulMorphism(x, xp, mats)
        rep = validate_koszul_morphism(perm)
        if rep:
            raise WitnessError(f"permutation step invalid: {rep[0]}")
        steps.append(WitnessStep("explicit_quasi_iso", "forward", morphism=perm))
    else:
        xp = x

    free = free_koszul(gens, x.potential)
    np_ = {s: len(p_cols[s]) for s in range(x.lo, x.hi + 1)}
    for s in range(x.lo, x.hi + 1):
        if np_[s] != free.rank(s + 1):
            raise WitnessError(f"free part at degree {s} has {np_[s]} "
                               f"coordinates, expected {free.rank(s + 1)}")

    nv = {s: x.rank(s) - np_[s] for s in range(x.lo, x.hi + 1)}
    v_degrees = [s for s in range(x.lo, x.hi + 1) if nv[s] > 0]
    if not v_degrees:
        raise WitnessError("nothing remains after splitting off the free part")
    v_lo, v_hi = v_degrees[0], x.hi

    def vpart(s):
        return list(range(np_.get(s, 0), x.rank(s)))

    ranks = {s: nv[s] for s in range(v_lo, v_hi + 1)}
    diffs = {}
    for s in range(v_lo, v_hi):
        diffs[s] = xp.diff(s).submatrix(vpart(s + 1), vpart(s))
    hfams = []
    for i in range(x.n):
        fam = {}
        for s in range(v_lo, v_hi + 1):
            fam[s] = xp.hop(i, s).submatrix(vpart(s - 1), vpart(s))
        hfams.append(fam)
    remainder = _module_from(ring, x.potential, v_lo, v_hi, ranks, diffs, hfams)

    comps = {}
    for u in range(free.lo, free.hi + 1):
        if u - 1 < xp.lo:
            continue
        comps[u] = xp.diff(u - 1).submatrix(vpart(u), list(range(np_[u - 1])))
    psi = KoszulMorphism(free, remainder, comps)
    rep = validate_koszul_morphism(psi)
    if rep:
        raise WitnessError(f"split morphism invalid: {rep[0]}")
    if cone_koszul(psi) != xp:
        raise WitnessError("module is not the cone on the extracted morphism")
    steps.append(WitnessStep("cone_off_free", "backward", morphism=psi,
                             generators=gens))

    new_slots = {s: [(tag, size) for (tag, size) in slots[s]
                     if tag not in p_tags]
                 for s in range(v_lo, v_hi + 1)}
    return steps, remainder, new_slots


def _graph_truncate(x, slots, mid_tag, det_tag):
    """Truncate above the degree holding `mid_tag`, replacing that degree by
    the kernel of the outgoing differential, realized as a graph over the
    non-mid coordinates.  The rows tagged `det_tag` one degree up must carry
    the identity on the mid columns; every other row must vanish on the
    graph.  Emits a backward explicit_quasi_iso (the inclusion)."""
    ring = x.ring
    tm = next(s for s in slots if any(tag == mid_tag for tag, _ in slots[s]))
    r_full = x.diff(tm)
    det_rows = _positions(slots[tm + 1], {det_tag})
    other_rows = [i for i in range(x.rank(tm + 1)) if i not in set(det_rows)]
    mid_cols = _positions(slots[tm], {mid_tag})
    nonmid = [j for j in range(x.rank(tm)) if j not in set(mid_cols)]
    if len(det_rows) != len(mid_cols):
        raise WitnessError("determining rows and mid columns disagree in size")
    sub = r_full.submatrix(det_rows, mid_cols)
    if sub != PolyMatrix.identity(ring, len(mid_cols)):
        raise WitnessError("mid columns do not carry the identity")

    # graph matrix gamma: non-mid coordinates are free, mid ones determined
    rdet = r_full.submatrix(det_rows, nonmid)
    gamma = PolyMatrix.zero(ring, x.rank(tm), len(nonmid))
    one = Poly.one(ring)
    for pos, j in enumerate(nonmid):
        gamma.put(j, pos, one)
    for q, j in enumerate(mid_cols):
        for pos in range(len(nonmid)):
            gamma.put(j, pos, -rdet.at(q, pos))
    leftover = r_full.submatrix(other_rows, list(range(x.rank(tm)))) * gamma
    if not leftover.is_zero:
        raise WitnessError("kernel graph does not kill the remaining rows")

    ranks = {s: x.rank(s) for s in range(x.lo, tm)}
    ranks[tm] = len(nonmid)
    diffs = {s: x.diff(s) for s in range(x.lo, tm - 1)}
    if tm - 1 >= x.lo:
        below = x.diff(tm - 1)
        newdiff = below.submatrix(nonmid, list(range(below.cols)))
        if gamma * newdiff != below:
            raise WitnessError("differential does not factor through the graph")
        diffs[tm - 1] = newdiff
    hfams = []
    for i in range(x.n):
        fam = {s: x.hop(i, s) for s in range(x.lo, tm)}
        fam[tm] = x.hop(i, tm) * gamma
        hfams.append(fam)
    truncated = _module_from(ring, x.potential, x.lo, tm, ranks, diffs, hfams)

    comps = {s: PolyMatrix.identity(ring, x.rank(s)) for s in range(x.lo, tm)}
    comps[tm] = gamma
    incl = KoszulMorphism(truncated, x, comps)
    rep = validate_koszul_morphism(incl)
    if rep:
        raise WitnessError(f"truncation inclusion invalid: {rep[0]}")
    step = WitnessStep("explicit_quasi_iso", "backward", morphism=incl)

    new_slots = {s: list(slots[s]) for s in range(x.lo, tm)}
    new_slots[tm] = [(tag, size) for (tag, size) in slots[tm]
                     if tag != mid_tag]
    return step, truncated, new_slots


def _pad_below(x):
    """Extend the window one degree down with a zero summand (iso step)."""
    ring = x.ring
    lo = x.lo - 1
    ranks = {s: x.rank(s) for s in range(lo, x.hi + 1)}
    ranks[lo] = 0
    diffs = {s: x.diff(s) for s in range(lo + 1, x.hi)}
    diffs[lo] = PolyMatrix.zero(ring, x.rank(lo + 1), 0)
    hfams = []
    for i in range(x.n):
        fam = {s: x.hop(i, s) for s in range(lo + 1, x.hi + 1)}
        fam[lo] = PolyMatrix.zero(ring, 0, 0)
        hfams.append(fam)
    padded = _module_from(ring, x.potential, lo, x.hi, ranks, diffs, hfams)
    comps = {s: PolyMatrix.identity(ring, x.rank(s))
             for s in range(x.lo, x.hi + 1)}
    g = KoszulMorphism(x, padded, comps)
    rep = validate_koszul_morphism(g)
    if rep:
        raise WitnessError(f"padding step invalid: {rep[0]}")
    return WitnessStep("explicit_quasi_iso", "forward", morphism=g), padded


def _cone_on_counit(x):
    phi = counit_map(x)
    step = WitnessStep("cone_off_free", "forward", morphism=phi,
                       generators=x.underlying)
    return step, cone_koszul(phi)


def _sub_complex(x, lo, hi):
    ranks = {s: x.rank(s) for s in range(lo, hi + 1)}
    diffs = {s: x.diff(s) for s in range(lo, hi)}
    return FreeComplex(x.ring, lo, hi, ranks, diffs)


# ---------------------------------------------------------------------------
# one-degree amplitude reduction (any number of potentials)
# ---------------------------------------------------------------------------

def amplitude_reduce_step(m):
    """Shorten a module by one degree at the top.

    Cone on the counit, split off the free module generated by the bottom
    n+1 degrees, then truncate onto the kernel graph at the new top.  Raises
    AmplitudeMinimalError when the amplitude is already at most n+1.
    """
    m = m.trim()
    n = m.n
    if m.amplitude <= n + 1:
        raise AmplitudeMinimalError(
            f"amplitude {m.amplitude} is already minimal for {n} potentials")
    lo, hi = m.lo, m.hi
    steps = []
    step, cone = _cone_on_counit(m)
    steps.append(step)
    slots = _cone_counit_slots(m)

    p_tags = set()
    for s in range(cone.lo, cone.hi + 1):
        for tag, _ in slots[s]:
            if tag[0] == "fk" and tag[3] <= lo + n:
                p_tags.add(tag)
    gens = _sub_complex(m.underlying, lo, lo + n)
    sub_steps, rem, slots = _split_off_free(cone, slots, p_tags, gens)
    steps.extend(sub_steps)

    step, out, _ = _graph_truncate(rem, slots, ("fk", 0, (), hi), ("e", hi))
    steps.append(step)
    return out, WitnessLog(m, out, steps)


def amplitude_reduce(m):
    """Reduce until the amplitude is at most n+1; concatenates the logs."""
    m = m.trim()
    steps = []
    current = m
    while current.amplitude > current.n + 1:
        current, log = amplitude_reduce_step(current)
        steps.extend(log.steps)
    return current, WitnessLog(m, current, steps)


# ---------------------------------------------------------------------------
# the two-degree reduction round used by the witnessed fold (one potential)
# ---------------------------------------------------------------------------

def _round(x):
    """One full reduction round: amplitude drops by two, and the folded
    matrix factorization is preserved up to a summand permutation."""
    lo, hi = x.lo, x.hi
    steps = []
    step, cone = _cone_on_counit(x)
    steps.append(step)
    slots = _cone_counit_slots(x)

    # split off the free module on the bottom two degrees
    p_tags = {("fk", 1, (0,), lo), ("fk", 1, (0,), lo + 1),
              ("fk", 0, (), lo), ("fk", 0, (), lo + 1)}
    gens = _sub_complex(x.underlying, lo, lo + 1)
    sub_steps, rem, slots = _split_off_free(cone, slots, p_tags, gens)
    steps.extend(sub_steps)

    # two-degree truncation onto the kernel graph at hi-2
    step, rem, slots = _graph_truncate(rem, slots, ("fk", 0, (), hi - 1),
                                       ("e", hi - 1))
    steps.append(step)

    # sweep: split off the free module on each middle degree, bottom up
    for c in range(lo + 2, hi - 1):
        p_tags = {("fk", 1, (0,), c), ("fk", 0, (), c)}
        gens = _sub_complex(x.underlying, c, c)
        sub_steps, rem, slots = _split_off_free(rem, slots, p_tags, gens)
        steps.extend(sub_steps)
    return steps, rem


def _round_labels(labels, lo, hi):
    out = {s: list(labels[s]) for s in range(lo, hi - 3)}
    out[hi - 3] = list(labels[hi - 1]) + list(labels[hi - 3])
    out[hi - 2] = list(labels[hi]) + list(labels[hi - 2])
    return out


def _salto(x):
    """Parity jump for a two-term module: [t-1, t] becomes [t-2, t-1] with
    the two structure maps exchanged."""
    t = x.hi
    steps = []
    step, cone = _cone_on_counit(x)
    steps.append(step)
    slots = _cone_counit_slots(x)

    p_tags = {("fk", 1, (0,), t - 1), ("fk", 0, (), t - 1)}
    gens = _sub_complex(x.underlying, t - 1, t - 1)
    sub_steps, rem, slots = _split_off_free(cone, slots, p_tags, gens)
    steps.extend(sub_steps)

    step, rem, slots = _graph_truncate(rem, slots, ("fk", 0, (), t),
                                       ("e", t))
    steps.append(step)
    return steps, rem


def default_points(m):
    """The all-zeros point, when it lies on the hypersurface."""
    origin = {v: 0 for v in m.ring.varnames}
    if all(evaluate(f, origin) == 0 for f in m.potential):
        return [origin]
    return []


def fold_with_witness(m, points=None):
    """Fold through an explicit chain of reductions, returning the
    factorization together with a machine-checkable log.

    The log carries the module from its trimmed input down to a two-term
    module in degrees [-1, 0]; the fold of that end module is checked,
    entry by entry, against orlov_fold of the input under the summand
    permutation accumulated along the way.  Any mismatch is an internal
    error — the witness must transport the fold exactly.
    """
    if m.n != 1:
        raise ValueError("witnessed folding needs a single potential entry")
    if points is None:
        points = default_points(m)
    m0 = m.trim()
    direct = orlov_fold(m0)

    current = m0
    labels = {s: [(s, i) for i in range(m0.rank(s))]
              for s in range(m0.lo, m0.hi + 1)}
    steps = []

    while current.amplitude > 2:
        if current.amplitude == 3:
            step, current = _pad_below(current)
            steps.append(step)
            labels[current.lo] = []
        round_steps, nxt = _round(current)
        steps.extend(round_steps)
        labels = _round_labels(labels, current.lo, current.hi)
        current = nxt

    if current.amplitude == 1:
        step, current = _pad_below(current)
        steps.append(step)
        labels[current.lo] = []

    if current.hi % 2 != 0:
        salto_steps, nxt = _salto(current)
        steps.extend(salto_steps)
        t = current.hi
        labels = {t - 2: list(labels[t]), t - 1: list(labels[t - 1])}
        current = nxt

    if current.hi != 0:
        offset = current.hi
        step = WitnessStep("shift_by_two", "forward", offset=offset)
        nxt = apply_step(step, current)
        steps.append(step)
        labels = {s - offset: labs for s, labs in labels.items()}
        current = nxt

    _check_fold_transport(m0, direct, current, labels)

    log = WitnessLog(m0, current, steps)
    report = validate_log(log, points)
    if report:
        raise WitnessError(f"emitted log fails validation: {report[0]}")
    return direct, log


def _check_fold_transport(m0, direct, end, labels):
    """The fold of the end module must be a permutation of the direct fold."""
    folded = orlov_fold(end)
    evens = [(s, i) for s in range(m0.lo, m0.hi + 1) if s % 2 == 0
             for i in range(m0.rank(s))]
    odds = [(s, i) for s in range(m0.lo, m0.hi + 1) if s % 2 != 0
            for i in range(m0.rank(s))]
    wit_evens = list(labels.get(0, []))
    wit_odds = list(labels.get(-1, []))
    if sorted(wit_evens) != sorted(evens) or sorted(wit_odds) != sorted(odds):
        raise WitnessError("transcription drift: summand labels do not "
                           "match the input module")
    pos0 = {lab: j for j, lab in enumerate(evens)}
    pos1 = {lab: j for j, lab in enumerate(odds)}
    for r, lab_r in enumerate(wit_odds):
        for c, lab_c in enumerate(wit_evens):
            if folded.phi0.at(r, c) != direct.phi0.at(pos1[lab_r], pos0[lab_c]):
                raise WitnessError("transcription drift in the even-to-odd map")
    for r, lab_r in enumerate(wit_evens):
        for c, lab_c in enumerate(wit_odds):
            if folded.phi1.at(r, c) != direct.phi1.at(pos0[lab_r], pos1[lab_c]):
                raise WitnessError("transcription drift in the odd-to-even map")


# ---------------------------------------------------------------------------
# codimension reduction on the standard chart
# ---------------------------------------------------------------------------

def codim_reduce_chart(m):
    """Trade n potentials for one on the chart where the last deformation
    coordinate is inverted: contractions combine as
    h_1 t_1 + ... + h_{n-1} t_{n-1} + h_n over the ring extended by the
    chart coordinates t_1..t_{n-1}.  With one potential this is the
    identity on the nose."""
    n = m.n
    if n == 1:
        return m
    base = m.ring.base_field
    old_vars = m.ring.varnames
    new_vars = tuple(f"t{i}" for i in range(1, n))
    clash = set(old_vars) & set(new_vars)
    if clash:
        raise ValueError(f"chart coordinates collide with ring variables: "
                         f"{sorted(clash)}")
    ring2 = polynomial_ring(base, old_vars + new_vars)
    total = len(old_vars) + len(new_vars)

    def promote(poly):
        terms = {exps + (0,) * (total - len(old_vars)): c
                 for exps, c in poly.terms.items()}
        return Poly(ring2, terms)

    def promote_mat(mat):
        return PolyMatrix(ring2, mat.rows, mat.cols,
                          [promote(e) for e in mat.entries])

    ts = [Poly.var(ring2, v) for v in new_vars]
    potential = sum((promote(m.potential[i]) * ts[i] for i in range(n - 1)),
                    start=promote(m.potential[n - 1]))

    lo, hi = m.lo, m.hi
    ranks = {s: m.rank(s) for s in range(lo, hi + 1)}
    diffs = {s: promote_mat(m.diff(s)) for s in range(lo, hi)}
    fam = {}
    for s in range(lo, hi + 1):
        acc = promote_mat(m.hop(n - 1, s))
        for i in range(n - 1):
            acc = acc + promote_mat(m.hop(i, s)).scale(ts[i])
        fam[s] = acc
    return _module_from(ring2, (potential,), lo, hi, ranks, diffs, [fam])


def eisenbud_operator(m, k):
    """The k-th chart coordinate acting on the folded reduced module."""
    n = m.n
    if n < 2:
        raise ValueError("operators need at least two potentials")
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be between 1 and {n - 1}")
    reduced = codim_reduce_chart(m)
    mf = orlov_fold(reduced)
    t = Poly.var(reduced.ring, f"t{k}")
    return MFMorphism(mf, mf,
                      PolyMatrix.scalar(reduced.ring, mf.r0, t),
                      PolyMatrix.scalar(reduced.ring, mf.r1, t))
