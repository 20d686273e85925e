"""Reading and writing the JSON document and witness-log formats.

A document is a single JSON object:

    {
      "ring": {"kind": "polynomial", "vars": ["x", "y"]},       # "p" for F_p
      "potential": ["x*y"],
      "objects": {
        "m3": {"type": "koszul_module", "degrees": [-2, 0],
               "ranks": {"-2": 1, "-1": 2, "0": 1},
               "d": {"-2": [["y"], ["-x"]], "-1": [["x", "y"]]},
               "h": [{"0": [["y"], ["0"]], "-1": [["0", "-y"]]}]}
      },
      "points": {"origin": {"x": 0, "y": 0}}
    }

Matrix entries are polynomial strings (bare integers also accepted).
Omitted matrices are zero; ranks default to zero inside the window.
Object types: complex, koszul_module, mf, koszul_morphism, mf_morphism.
Morphisms name their endpoints, which may appear anywhere in the document.
MF payloads carry their own potential entry "f"; everything graded uses the
document potential.

Witness logs are a separate self-contained format (`witness_payload` /
`parse_witness`): ring, potential, the points used when the log was emitted,
start and end modules, and one payload per step with full matrices, enough
to re-run every check without the emitting document.

All dumps are deterministic: canonical polynomial strings, sorted keys,
two-space indent, trailing newline.
"""

import json
from fractions import Fraction

from koszulmf.complexes import FreeComplex, PolyMatrix
from koszulmf.koszul import KoszulModule, KoszulMorphism
from koszulmf.mf import MFMorphism, MFObject
from koszulmf.reduce import WitnessLog, WitnessStep
from koszulmf.ring import (ParseError, normalize_scalar, parse_poly,
                           polynomial_ring, prime_field, rationals)

WITNESS_SCHEMA = "koszulmf.witness/1"


class DocumentError(ValueError):
    """Anything wrong with a document file: unreadable, bad JSON, bad schema,
    or an entry that fails to parse."""


class Document:
    __slots__ = ("ring", "potential", "objects", "points")

    def __init__(self, ring, potential, objects, points):
        self.ring = ring
        self.potential = potential
        self.objects = objects      # name -> library object, document order
        self.points = points        # name -> {var: scalar}


def _expect(cond, msg):
    if not cond:
        raise DocumentError(msg)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def parse_ring_payload(payload):
    _expect(isinstance(payload, dict), "ring must be an object")
    kind = payload.get("kind")
    if kind == "rationals":
        return rationals()
    if kind == "prime_field":
        p = payload.get("p")
        _expect(isinstance(p, int), "prime_field needs an integer p")
        try:
            return prime_field(p)
        except ValueError as e:
            raise DocumentError(str(e))
    if kind == "polynomial":
        vars_ = payload.get("vars")
        _expect(isinstance(vars_, list) and vars_
                and all(isinstance(v, str) for v in vars_),
                "polynomial ring needs a nonempty list of variable names")
        p = payload.get("p")
        base = rationals()
        if p is not None:
            _expect(isinstance(p, int), "p must be an integer")
            try:
                base = prime_field(p)
            except ValueError as e:
                raise DocumentError(str(e))
        try:
            return polynomial_ring(base, tuple(vars_))
        except ValueError as e:
            raise DocumentError(str(e))
    raise DocumentError(f"unknown ring kind {kind!r}")


def _parse_entry(ring, text, where):
    if isinstance(text, int):
        text = str(text)
    _expect(isinstance(text, str), f"{where}: matrix entry must be a string")
    try:
        return parse_poly(text, ring)
    except ParseError as e:
        raise DocumentError(f"{where}: {e}")


def _parse_matrix(ring, payload, rows, cols, where):
    _expect(isinstance(payload, list) and len(payload) == rows
            and all(isinstance(r, list) and len(r) == cols for r in payload),
            f"{where}: expected a {rows}x{cols} matrix")
    flat = [_parse_entry(ring, e, where) for row in payload for e in row]
    return PolyMatrix(ring, rows, cols, flat)


def _parse_window(payload, where):
    degs = payload.get("degrees")
    _expect(isinstance(degs, list) and len(degs) == 2
            and all(isinstance(d, int) for d in degs) and degs[0] <= degs[1],
            f"{where}: degrees must be [lo, hi] with lo <= hi")
    lo, hi = degs
    ranks_raw = payload.get("ranks")
    _expect(isinstance(ranks_raw, dict), f"{where}: ranks must be an object")
    ranks = {}
    for key, val in ranks_raw.items():
        try:
            deg = int(key)
        except ValueError:
            raise DocumentError(f"{where}: bad degree key {key!r}")
        _expect(isinstance(val, int) and val >= 0,
                f"{where}: rank at {deg} must be a nonnegative integer")
        _expect(lo <= deg <= hi, f"{where}: rank at {deg} outside window")
        ranks[deg] = val
    return lo, hi, ranks


def _parse_degree_matrices(ring, payload, lo, hi, rank, shift, where):
    """Degree-keyed matrix map; at degree m the shape is
    rank(m + shift) x rank(m)."""
    out = {}
    if payload is None:
        return out
    _expect(isinstance(payload, dict), f"{where}: must map degrees to matrices")
    for key, val in payload.items():
        try:
            deg = int(key)
        except ValueError:
            raise DocumentError(f"{where}: bad degree key {key!r}")
        out[deg] = _parse_matrix(ring, val, rank(deg + shift), rank(deg),
                                 f"{where}[{deg}]")
    return out


def parse_complex_payload(ring, payload, where):
    lo, hi, ranks = _parse_window(payload, where)
    rank = lambda m: ranks.get(m, 0) if lo <= m <= hi else 0
    diffs = _parse_degree_matrices(ring, payload.get("d"), lo, hi, rank, 1,
                                   f"{where}.d")
    for deg in diffs:
        _expect(lo <= deg < hi, f"{where}.d: degree {deg} outside window")
    try:
        return FreeComplex(ring, lo, hi, ranks, diffs)
    except ValueError as e:
        raise DocumentError(f"{where}: {e}")


def parse_module_payload(ring, potential, payload, where):
    underlying = parse_complex_payload(ring, payload, where)
    lo, hi = underlying.lo, underlying.hi
    hs = payload.get("h")
    _expect(isinstance(hs, list) and len(hs) == len(potential),
            f"{where}: need {len(potential)} h families")
    fams = []
    for i, fam_payload in enumerate(hs):
        fam = _parse_degree_matrices(ring, fam_payload, lo, hi,
                                     underlying.rank, -1, f"{where}.h[{i}]")
        for deg in fam:
            _expect(lo <= deg <= hi,
                    f"{where}.h[{i}]: degree {deg} outside window")
        fams.append(fam)
    try:
        return KoszulModule(ring, potential, underlying, fams)
    except ValueError as e:
        raise DocumentError(f"{where}: {e}")


def parse_mf_payload(ring, payload, where):
    f = _parse_entry(ring, payload.get("f", ""), f"{where}.f")
    r0, r1 = payload.get("r0"), payload.get("r1")
    _expect(isinstance(r0, int) and isinstance(r1, int) and r0 >= 0 and r1 >= 0,
            f"{where}: r0 and r1 must be nonnegative integers")
    phi0 = _parse_matrix(ring, payload.get("phi0"), r1, r0, f"{where}.phi0")
    phi1 = _parse_matrix(ring, payload.get("phi1"), r0, r1, f"{where}.phi1")
    try:
        return MFObject(ring, f, r0, r1, phi0, phi1)
    except ValueError as e:
        raise DocumentError(f"{where}: {e}")


def _parse_scalar(ring, value, where):
    if isinstance(value, str):
        try:
            value = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"{where}: bad scalar {value!r}")
    _expect(isinstance(value, (int, Fraction)),
            f"{where}: point values must be integers or fractions")
    try:
        return normalize_scalar(ring, Fraction(value))
    except ZeroDivisionError:
        raise DocumentError(f"{where}: denominator vanishes mod p")


def parse_point_payload(ring, payload, where):
    _expect(isinstance(payload, dict), f"{where}: a point maps vars to values")
    point = {}
    for var, value in payload.items():
        _expect(var in ring.varnames, f"{where}: unknown variable {var!r}")
        point[var] = _parse_scalar(ring, value, f"{where}.{var}")
    for var in ring.varnames:
        _expect(var in point, f"{where}: missing variable {var!r}")
    return point


def load_document(path):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path}: not valid JSON: {e}")
    return parse_document(raw)


def parse_document(raw):
    _expect(isinstance(raw, dict), "document must be a JSON object")
    ring = parse_ring_payload(raw.get("ring"))
    pot_raw = raw.get("potential")
    _expect(isinstance(pot_raw, list) and pot_raw,
            "potential must be a nonempty list")
    potential = tuple(_parse_entry(ring, f, f"potential[{i}]")
                      for i, f in enumerate(pot_raw))

    # two passes: morphisms may name their endpoints anywhere in the file
    # (canonical dumps sort object names, so "earlier" is not reliable)
    objects = {}
    deferred = []
    for name, payload in (raw.get("objects") or {}).items():
        _expect(isinstance(payload, dict), f"objects.{name}: must be an object")
        typ = payload.get("type")
        where = f"objects.{name}"
        if typ == "complex":
            objects[name] = parse_complex_payload(ring, payload, where)
        elif typ == "koszul_module":
            objects[name] = parse_module_payload(ring, potential, payload,
                                                 where)
        elif typ == "mf":
            objects[name] = parse_mf_payload(ring, payload, where)
        elif typ in ("koszul_morphism", "mf_morphism"):
            objects[name] = None    # placeholder keeps document order
            deferred.append((name, payload, where, typ))
        else:
            raise DocumentError(f"{where}: unknown type {typ!r}")
    for name, payload, where, typ in deferred:
        objects[name] = _parse_morphism(ring, payload, objects, where, typ)

    points = {}
    for name, payload in (raw.get("points") or {}).items():
        points[name] = parse_point_payload(ring, payload, f"points.{name}")
    return Document(ring, potential, objects, points)


def _resolve(objects, name, want, where):
    _expect(isinstance(name, str) and name in objects,
            f"{where}: unknown object {name!r}")
    obj = objects[name]
    _expect(isinstance(obj, want), f"{where}: {name!r} has the wrong type")
    return obj


def _parse_morphism(ring, payload, objects, where, typ):
    if typ == "koszul_morphism":
        src = _resolve(objects, payload.get("source"), KoszulModule,
                       f"{where}.source")
        tgt = _resolve(objects, payload.get("target"), KoszulModule,
                       f"{where}.target")
        comps = {}
        for key, val in (payload.get("components") or {}).items():
            try:
                deg = int(key)
            except ValueError:
                raise DocumentError(f"{where}.components: bad degree {key!r}")
            comps[deg] = _parse_matrix(ring, val, tgt.rank(deg), src.rank(deg),
                                       f"{where}.components[{deg}]")
        try:
            return KoszulMorphism(src, tgt, comps)
        except ValueError as e:
            raise DocumentError(f"{where}: {e}")
    src = _resolve(objects, payload.get("source"), MFObject, f"{where}.source")
    tgt = _resolve(objects, payload.get("target"), MFObject, f"{where}.target")
    a0 = _parse_matrix(ring, payload.get("alpha0"), tgt.r0, src.r0,
                       f"{where}.alpha0")
    a1 = _parse_matrix(ring, payload.get("alpha1"), tgt.r1, src.r1,
                       f"{where}.alpha1")
    try:
        return MFMorphism(src, tgt, a0, a1)
    except ValueError as e:
        raise DocumentError(f"{where}: {e}")


# ---------------------------------------------------------------------------
# payload builders (library objects -> JSON-ready structures)
# ---------------------------------------------------------------------------

def ring_payload(ring):
    if ring.kind == "rationals":
        return {"kind": "rationals"}
    if ring.kind == "prime_field":
        return {"kind": "prime_field", "p": ring.p}
    out = {"kind": "polynomial", "vars": list(ring.vars)}
    if ring.base.kind == "prime_field":
        out["p"] = ring.base.p
    return out


def _matrix_payload(mat):
    return [[str(mat.at(i, j)) for j in range(mat.cols)]
            for i in range(mat.rows)]


def complex_payload(c):
    return {
        "degrees": [c.lo, c.hi],
        "ranks": {str(m): c.rank(m) for m in range(c.lo, c.hi + 1)},
        "d": {str(m): _matrix_payload(c.diff(m)) for m in range(c.lo, c.hi)},
    }


def module_payload(m):
    out = complex_payload(m.underlying)
    out["h"] = [{str(deg): _matrix_payload(m.hop(i, deg))
                 for deg in range(m.lo, m.hi + 1)}
                for i in range(m.n)]
    return out


def mf_payload(mf):
    return {
        "type": "mf",
        "f": str(mf.potential),
        "r0": mf.r0,
        "r1": mf.r1,
        "phi0": _matrix_payload(mf.phi0),
        "phi1": _matrix_payload(mf.phi1),
    }


def mf_morphism_payload(g, source_name, target_name):
    return {
        "type": "mf_morphism",
        "source": source_name,
        "target": target_name,
        "alpha0": _matrix_payload(g.alpha0),
        "alpha1": _matrix_payload(g.alpha1),
    }


def point_payload(point):
    return {var: str(val) for var, val in point.items()}


def document_payload(ring, potential, objects, points=None):
    """objects: name -> ready payload dict (with its "type" key)."""
    out = {
        "ring": ring_payload(ring),
        "potential": [str(f) for f in potential],
        "objects": objects,
    }
    if points:
        out["points"] = {name: point_payload(pt) for name, pt in points.items()}
    return out


def dumps(payload):
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_json(path, payload):
    with open(path, "w") as fh:
        fh.write(dumps(payload))


# ---------------------------------------------------------------------------
# witness logs
# ---------------------------------------------------------------------------

def _morphism_components_payload(g):
    lo = min(g.source.lo, g.target.lo)
    hi = max(g.source.hi, g.target.hi)
    return {str(deg): _matrix_payload(g.component(deg))
            for deg in range(lo, hi + 1)}


def _step_payload(step):
    out = {"kind": step.kind, "orientation": step.orientation}
    if step.kind == "cone_off_free":
        out["generators"] = complex_payload(step.generators)
        out["target"] = module_payload(step.morphism.target)
        out["components"] = _morphism_components_payload(step.morphism)
    elif step.kind == "explicit_quasi_iso":
        out["source"] = module_payload(step.morphism.source)
        out["target"] = module_payload(step.morphism.target)
        out["components"] = _morphism_components_payload(step.morphism)
    else:
        out["offset"] = step.offset
    return out


def witness_payload(log, points=None):
    ring = log.start.ring
    return {
        "schema": WITNESS_SCHEMA,
        "ring": ring_payload(ring),
        "potential": [str(f) for f in log.start.potential],
        "points": {name: point_payload(pt)
                   for name, pt in (points or {}).items()},
        "start": module_payload(log.start),
        "end": module_payload(log.end),
        "steps": [_step_payload(s) for s in log.steps],
    }


def parse_witness(raw):
    """Rebuild a WitnessLog (plus its stored points) from a payload."""
    from koszulmf.koszul import free_koszul

    _expect(isinstance(raw, dict), "witness must be a JSON object")
    _expect(raw.get("schema") == WITNESS_SCHEMA,
            f"unknown witness schema {raw.get('schema')!r}")
    ring = parse_ring_payload(raw.get("ring"))
    pot_raw = raw.get("potential")
    _expect(isinstance(pot_raw, list) and pot_raw,
            "potential must be a nonempty list")
    potential = tuple(_parse_entry(ring, f, f"potential[{i}]")
                      for i, f in enumerate(pot_raw))

    def module_at(payload, where):
        _expect(isinstance(payload, dict), f"{where}: must be an object")
        return parse_module_payload(ring, potential, payload, where)

    start = module_at(raw.get("start"), "start")
    end = module_at(raw.get("end"), "end")

    def components_between(payload, src, tgt, where):
        comps = {}
        for key, val in (payload or {}).items():
            try:
                deg = int(key)
            except ValueError:
                raise DocumentError(f"{where}: bad degree {key!r}")
            comps[deg] = _parse_matrix(ring, val, tgt.rank(deg), src.rank(deg),
                                       f"{where}[{deg}]")
        return comps

    steps = []
    steps_raw = raw.get("steps")
    _expect(isinstance(steps_raw, list), "steps must be a list")
    for i, sp in enumerate(steps_raw):
        where = f"steps[{i}]"
        _expect(isinstance(sp, dict), f"{where}: must be an object")
        kind = sp.get("kind")
        orientation = sp.get("orientation")
        _expect(orientation in ("forward", "backward"),
                f"{where}: bad orientation {orientation!r}")
        if kind == "cone_off_free":
            gens = parse_complex_payload(ring, sp.get("generators"),
                                         f"{where}.generators")
            target = module_at(sp.get("target"), f"{where}.target")
            source = free_koszul(gens, potential)
            comps = components_between(sp.get("components"), source, target,
                                       f"{where}.components")
            try:
                psi = KoszulMorphism(source, target, comps)
            except ValueError as e:
                raise DocumentError(f"{where}: {e}")
            steps.append(WitnessStep(kind, orientation, morphism=psi,
                                     generators=gens))
        elif kind == "explicit_quasi_iso":
            source = module_at(sp.get("source"), f"{where}.source")
            target = module_at(sp.get("target"), f"{where}.target")
            comps = components_between(sp.get("components"), source, target,
                                       f"{where}.components")
            try:
                g = KoszulMorphism(source, target, comps)
            except ValueError as e:
                raise DocumentError(f"{where}: {e}")
            steps.append(WitnessStep(kind, orientation, morphism=g))
        elif kind == "shift_by_two":
            offset = sp.get("offset")
            _expect(isinstance(offset, int) and offset % 2 == 0,
                    f"{where}: offset must be an even integer")
            steps.append(WitnessStep(kind, orientation, offset=offset))
        else:
            raise DocumentError(f"{where}: unknown kind {kind!r}")

    points = {}
    for name, payload in (raw.get("points") or {}).items():
        points[name] = parse_point_payload(ring, payload, f"points.{name}")
    return WitnessLog(start, end, steps), points


def load_witness(path):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path}: not valid JSON: {e}")
    return parse_witness(raw)
