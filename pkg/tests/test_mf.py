"""Matrix factorizations: axioms, folding, residue homology."""

import random

import pytest

import corpus
import genmod
from koszulmf.complexes import PolyMatrix
from koszulmf.koszul import KoszulMorphism, compose_koszul_morphisms
from koszulmf.mf import (MFMorphism, MFObject, compose_mf_morphisms,
                         fold_morphism, mf_cone, mf_direct_sum, mf_shift,
                         mf_tensor, orlov_fold, orlov_unfold,
                         residue_homology, validate_mf, validate_mf_morphism)
from koszulmf.ring import parse_poly, polynomial_ring, rationals

QX = polynomial_ring(rationals(), ("x",))


def _m(ring, rows, cols, entries):
    return PolyMatrix(ring, rows, cols,
                      [parse_poly(e, ring) for e in entries])


def _mf1(ring, f, a, b):
    return MFObject(ring, parse_poly(f, ring), 1, 1,
                    _m(ring, 1, 1, [a]), _m(ring, 1, 1, [b]))


# ---------------------------------------------------------------------------
# axioms and validation
# ---------------------------------------------------------------------------

def test_validate_mf_accepts_and_rejects():
    good = _mf1(QX, "x^2", "x", "x")
    assert validate_mf(good) == []
    bad = _mf1(QX, "x^2", "x", "x^2")
    rep = validate_mf(bad)
    assert rep and "f·id" in rep[0]


def test_mf_constructor_shape_errors():
    with pytest.raises(ValueError):
        MFObject(QX, parse_poly("x^2", QX), 1, 2,
                 _m(QX, 1, 1, ["x"]), _m(QX, 1, 1, ["x"]))


def test_mf_shift_is_an_involution():
    rng = random.Random(411)
    for _ in range(25):
        m = genmod.random_mf(rng)
        s = mf_shift(m)
        assert validate_mf(s) == []
        assert (s.r0, s.r1) == (m.r1, m.r0)
        assert mf_shift(s) == m


def test_mf_cone_of_valid_morphisms_is_valid():
    rng = random.Random(412)
    for _ in range(25):
        g, _ = genmod.random_composable_pair(rng)
        a = fold_morphism(g)
        assert validate_mf_morphism(a) == []
        c = mf_cone(a)
        assert validate_mf(c) == []
        assert (c.r0, c.r1) == (a.target.r0 + a.source.r1,
                                a.target.r1 + a.source.r0)


def test_mf_direct_sum():
    a = _mf1(QX, "x^2", "x", "x")
    b = _mf1(QX, "x^2", "x^2", "1")
    s = mf_direct_sum(a, b)
    assert validate_mf(s) == []
    assert (s.r0, s.r1) == (2, 2)
    assert residue_homology(s, {"x": 0}) == (1, 1)
    with pytest.raises(ValueError):
        mf_direct_sum(a, _mf1(QX, "x^4", "x", "x^3"))


# ---------------------------------------------------------------------------
# tensor
# ---------------------------------------------------------------------------

def test_mf_tensor_disjoint_rings_golden():
    qy = polynomial_ring(rationals(), ("y",))
    a = _mf1(QX, "x^2", "x", "x")
    b = _mf1(qy, "y^2", "y", "y")
    t = mf_tensor(a, b)
    assert t.ring.varnames == ("x", "y")
    assert t.potential == parse_poly("x^2 + y^2", t.ring)
    assert (t.r0, t.r1) == (2, 2)
    assert validate_mf(t) == []
    assert residue_homology(t, {"x": 0, "y": 0}) == (2, 2)


def test_mf_tensor_same_ring():
    a = _mf1(QX, "x^2", "x", "x")
    t = mf_tensor(a, a)
    assert t.ring == QX
    assert t.potential == parse_poly("2*x^2", QX)
    assert validate_mf(t) == []


def test_mf_tensor_partial_collision_rejected():
    qxy = polynomial_ring(rationals(), ("x", "y"))
    qyz = polynomial_ring(rationals(), ("y", "z"))
    a = _mf1(qxy, "x*y", "x", "y")
    b = _mf1(qyz, "y*z", "y", "z")
    with pytest.raises(ValueError, match="collide"):
        mf_tensor(a, b)


def test_mf_tensor_random_factors_validate():
    rng = random.Random(413)
    for _ in range(15):
        a = genmod.random_mf(rng)
        b = genmod.random_mf(rng)
        if a.ring != b.ring and set(a.ring.varnames) & set(b.ring.varnames):
            continue
        t = mf_tensor(a, b)
        assert validate_mf(t) == []


# ---------------------------------------------------------------------------
# folding
# ---------------------------------------------------------------------------

def test_orlov_fold_m3_golden():
    m = corpus.by_name("m3").module
    f = orlov_fold(m)
    ring = m.ring
    assert (f.r0, f.r1) == (2, 2)
    # E0 = (deg -2, deg 0), E1 = (deg -1); phi0 sends evens to odds
    assert f.phi0 == _m(ring, 2, 2, ["y", "y",
                                     "-x", "0"])
    assert f.phi1 == _m(ring, 2, 2, ["0", "-y",
                                     "x", "y"])
    assert validate_mf(f) == []


def test_orlov_fold_requires_one_potential():
    m = corpus.by_name("kuv").module
    with pytest.raises(ValueError):
        orlov_fold(m)


@pytest.mark.parametrize("name", [e.name for e in corpus.CORPUS
                                  if e.module.n == 1])
def test_orlov_fold_corpus_validates(name):
    m = corpus.by_name(name).module
    assert validate_mf(orlov_fold(m)) == []


def test_fold_then_unfold_two_term_identity():
    # a module already concentrated in [-1, 0] survives the round trip
    m = corpus.by_name("a1_module").module
    assert (m.lo, m.hi) == (-1, 0)
    assert orlov_unfold(orlov_fold(m)) == m


def test_unfold_then_fold_identity_random():
    rng = random.Random(414)
    for _ in range(40):
        mf = genmod.random_mf(rng)
        assert orlov_fold(orlov_unfold(mf)) == mf


def test_unfold_validates():
    rng = random.Random(415)
    for _ in range(15):
        mf = genmod.random_mf(rng)
        from koszulmf.koszul import validate_koszul
        assert validate_koszul(orlov_unfold(mf)) == []


def test_fold_morphism_preserves_composition():
    rng = random.Random(416)
    for _ in range(20):
        g1, g2 = genmod.random_composable_pair(rng)
        lhs = fold_morphism(compose_koszul_morphisms(g2, g1))
        rhs = compose_mf_morphisms(fold_morphism(g2), fold_morphism(g1))
        assert lhs == rhs


def test_fold_morphism_identity_folds_to_identity():
    m = corpus.by_name("m3").module
    comps = {u: PolyMatrix.identity(m.ring, m.rank(u))
             for u in range(m.lo, m.hi + 1)}
    a = fold_morphism(KoszulMorphism(m, m, comps))
    assert a.alpha0 == PolyMatrix.identity(m.ring, 2)
    assert a.alpha1 == PolyMatrix.identity(m.ring, 2)


# ---------------------------------------------------------------------------
# residue homology
# ---------------------------------------------------------------------------

def test_residue_homology_oracle_values():
    assert residue_homology(_mf1(QX, "x^2", "x", "x"), {"x": 0}) == (1, 1)
    assert residue_homology(_mf1(QX, "x^4", "x", "x^3"), {"x": 0}) == (1, 1)
    assert residue_homology(_mf1(QX, "x^2", "x^2", "1"), {"x": 0}) == (0, 0)
    m3 = corpus.by_name("m3").module
    assert residue_homology(orlov_fold(m3), {"x": 0, "y": 0}) == (2, 2)
    assert residue_homology(orlov_fold(m3), {"x": 1, "y": 0}) == (0, 0)


def test_residue_homology_off_locus():
    a = _mf1(QX, "x^2", "x", "x")
    with pytest.raises(ValueError) as exc:
        residue_homology(a, {"x": 2})
    assert "4" in str(exc.value)


def test_cone_of_identity_has_trivial_residue():
    a = _mf1(QX, "x^2", "x", "x")
    ident = MFMorphism(a, a, PolyMatrix.identity(QX, 1),
                       PolyMatrix.identity(QX, 1))
    c = mf_cone(ident)
    assert validate_mf(c) == []
    assert residue_homology(c, {"x": 0}) == (0, 0)
