"""End-to-end CLI tests: subcommands, reports, exit codes, determinism."""

import json
import os

import pytest

import corpus
from koszulmf import cli
from koszulmf import documents as docs
from koszulmf.complexes import PolyMatrix
from koszulmf.koszul import KoszulMorphism
from koszulmf.mf import mf_shift, orlov_unfold
from koszulmf.ring import parse_poly, polynomial_ring, rationals

A1 = os.path.join(corpus.DATA, "a1.json")
M3 = os.path.join(corpus.DATA, "m3.json")
KUV = os.path.join(corpus.DATA, "koszul_uv.json")


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out.splitlines()


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

def test_validate_a1(capsys):
    code, lines = run(capsys, ["validate", "--input", A1])
    assert code == 0
    assert lines == ["a1=valid", "status=ok"]


def test_validate_corpus_files(capsys):
    for path in (M3, KUV):
        code, lines = run(capsys, ["validate", "--input", path])
        assert code == 0
        assert lines[-1] == "status=ok"


def test_validate_reports_broken_object(capsys, tmp_path):
    raw = json.load(open(A1))
    raw["objects"]["a1"]["phi1"] = [["x^2"]]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(raw))
    code, lines = run(capsys, ["validate", "--input", str(path)])
    assert code == 1
    assert lines[0].startswith("a1=invalid")
    assert lines[-1] == "status=failed"


def test_validate_needs_input(capsys):
    code, lines = run(capsys, ["validate"])
    assert code == 3
    assert lines[0].startswith("error=precondition")


# ---------------------------------------------------------------------------
# fold pipeline
# ---------------------------------------------------------------------------

def test_fold_m3_full_report(capsys, tmp_path):
    wpath = tmp_path / "w.json"
    opath = tmp_path / "out.json"
    code, lines = run(capsys, [
        "fold", "--input", M3, "--points", "origin,axis",
        "--witness", str(wpath), "--output", str(opath)])
    assert code == 0
    assert "object=m3" in lines
    assert "r0=2" in lines and "r1=2" in lines
    assert "witness_steps=6" in lines
    steps = [l for l in lines if l.startswith("step_")]
    assert len(steps) == 6 and all(l.endswith(":ok") for l in steps)
    assert "residue_homology[origin]=even=2 odd=2" in lines
    assert "residue_homology[axis]=even=0 odd=0" in lines
    assert lines[-1] == "status=ok"

    # the output document holds the factorization
    out_doc = docs.load_document(opath)
    mf = out_doc.objects["m3_folded"]
    assert (mf.r0, mf.r1) == (2, 2)

    # byte-identical rerun
    w2 = tmp_path / "w2.json"
    o2 = tmp_path / "o2.json"
    code2, lines2 = run(capsys, [
        "fold", "--input", M3, "--points", "origin,axis",
        "--witness", str(w2), "--output", str(o2)])
    assert code2 == 0 and lines2 == lines
    assert wpath.read_bytes() == w2.read_bytes()
    assert opath.read_bytes() == o2.read_bytes()


def test_fold_emitted_witness_passes_check(capsys, tmp_path):
    wpath = tmp_path / "w.json"
    code, _ = run(capsys, ["fold", "--input", M3, "--witness", str(wpath)])
    assert code == 0
    code, lines = run(capsys, ["witness-check", "--witness", str(wpath)])
    assert code == 0
    assert "steps=6" in lines
    assert "start_degrees=-2..0" in lines
    assert "end_degrees=-1..0" in lines
    assert lines[-1] == "status=ok"


def test_witness_check_catches_tampering(capsys, tmp_path):
    wpath = tmp_path / "w.json"
    run(capsys, ["fold", "--input", M3, "--witness", str(wpath)])
    raw = json.loads(wpath.read_text())
    raw["end"]["d"]["-1"][0][0] = "y"
    wpath.write_text(json.dumps(raw))
    code, lines = run(capsys, ["witness-check", "--witness", str(wpath)])
    assert code == 1
    assert any(l.startswith("check=") for l in lines)
    assert lines[-1] == "status=failed"


def test_witness_check_with_extra_inline_point(capsys, tmp_path):
    wpath = tmp_path / "w.json"
    run(capsys, ["fold", "--input", M3, "--witness", str(wpath)])
    code, lines = run(capsys, ["witness-check", "--witness", str(wpath),
                               "--point", "x=1,y=0"])
    assert code == 0
    assert "points=2" in lines


def test_witness_check_needs_witness(capsys):
    code, lines = run(capsys, ["witness-check", "--input", M3])
    assert code == 3


def test_witness_check_points_need_input(capsys, tmp_path):
    wpath = tmp_path / "w.json"
    run(capsys, ["fold", "--input", M3, "--witness", str(wpath)])
    code, lines = run(capsys, ["witness-check", "--witness", str(wpath),
                               "--points", "origin"])
    assert code == 3


def test_witness_check_ring_mismatch(capsys, tmp_path):
    wpath = tmp_path / "w.json"
    run(capsys, ["fold", "--input", M3, "--witness", str(wpath)])
    code, lines = run(capsys, ["witness-check", "--witness", str(wpath),
                               "--input", A1])
    assert code == 3
    assert "ring" in lines[0]


def test_fold_rejects_off_locus_point(capsys):
    code, lines = run(capsys, ["fold", "--input", M3, "--point", "x=1,y=1"])
    assert code == 3
    assert "zero locus" in lines[0]


def test_fold_rejects_two_potentials(capsys):
    code, lines = run(capsys, ["fold", "--input", KUV])
    assert code == 3
    assert "one potential" in lines[0]


def test_fold_unknown_point_name(capsys):
    code, lines = run(capsys, ["fold", "--input", M3, "--points", "nowhere"])
    assert code == 3


# ---------------------------------------------------------------------------
# unfold / shift / cone / tensor
# ---------------------------------------------------------------------------

def test_unfold_a1(capsys, tmp_path):
    opath = tmp_path / "out.json"
    code, lines = run(capsys, ["unfold", "--input", A1,
                               "--output", str(opath)])
    assert code == 0
    assert "degrees=-1..0" in lines
    assert "ranks=1,1" in lines
    out_doc = docs.load_document(opath)
    a1 = docs.load_document(A1).objects["a1"]
    assert out_doc.objects["a1_unfolded"] == orlov_unfold(a1)
    # named points survive, so the output chains into point-using commands
    assert list(out_doc.points) == ["origin"]


def test_unfold_then_fold_chain(capsys, tmp_path):
    mpath = tmp_path / "mod.json"
    run(capsys, ["unfold", "--input", A1, "--output", str(mpath)])
    code, lines = run(capsys, ["fold", "--input", str(mpath),
                               "--points", "origin"])
    assert code == 0
    assert "residue_homology[origin]=even=1 odd=1" in lines


def test_shift_a1(capsys, tmp_path):
    opath = tmp_path / "out.json"
    code, lines = run(capsys, ["shift", "--input", A1, "--output", str(opath)])
    assert code == 0
    a1 = docs.load_document(A1).objects["a1"]
    assert docs.load_document(opath).objects["a1_shifted"] == mf_shift(a1)


def test_cone_of_koszul_morphism(capsys, tmp_path):
    m3 = corpus.by_name("m3").module
    ident = KoszulMorphism(
        m3, m3, {u: PolyMatrix.identity(m3.ring, m3.rank(u))
                 for u in range(m3.lo, m3.hi + 1)})
    payload = docs.document_payload(
        m3.ring, m3.potential,
        {"m3": {"type": "koszul_module", **docs.module_payload(m3)},
         "zid": {"type": "koszul_morphism", "source": "m3", "target": "m3",
                 "components": docs._morphism_components_payload(ident)}})
    ipath = tmp_path / "in.json"
    opath = tmp_path / "cone.json"
    docs.write_json(ipath, payload)
    code, lines = run(capsys, ["cone", "--input", str(ipath),
                               "--output", str(opath)])
    assert code == 0
    assert "degrees=-3..0" in lines
    assert "ranks=1,3,3,1" in lines
    code, lines = run(capsys, ["validate", "--input", str(opath)])
    assert code == 0


def test_cone_of_mf_morphism(capsys, tmp_path):
    a1 = docs.load_document(A1).objects["a1"]
    ring = a1.ring
    payload = docs.document_payload(
        ring, (a1.potential,),
        {"a": docs.mf_payload(a1),
         "b": docs.mf_payload(a1),
         "zmap": {"type": "mf_morphism", "source": "a", "target": "b",
                  "alpha0": [["1"]], "alpha1": [["1"]]}})
    ipath = tmp_path / "in.json"
    docs.write_json(ipath, payload)
    code, lines = run(capsys, ["cone", "--input", str(ipath)])
    assert code == 0
    assert "r0=2" in lines and "r1=2" in lines


def test_cone_needs_exactly_one_morphism(capsys):
    code, lines = run(capsys, ["cone", "--input", M3])
    assert code == 3
    assert "morphism" in lines[0]


def test_tensor_two_mfs(capsys, tmp_path):
    a1 = docs.load_document(A1).objects["a1"]
    payload = docs.document_payload(
        a1.ring, (a1.potential,),
        {"a": docs.mf_payload(a1), "b": docs.mf_payload(a1)})
    ipath = tmp_path / "in.json"
    opath = tmp_path / "t.json"
    docs.write_json(ipath, payload)
    code, lines = run(capsys, ["tensor", "--input", str(ipath),
                               "--output", str(opath)])
    assert code == 0
    assert "f=2*x^2" in lines
    assert "r0=2" in lines and "r1=2" in lines
    code, _ = run(capsys, ["validate", "--input", str(opath)])
    assert code == 0


def test_tensor_needs_two_mfs(capsys):
    code, lines = run(capsys, ["tensor", "--input", A1])
    assert code == 3
    assert "two mf" in lines[0]


# ---------------------------------------------------------------------------
# reductions
# ---------------------------------------------------------------------------

def _write_module_doc(path, m, points=None):
    payload = docs.document_payload(
        m.ring, m.potential,
        {"m": {"type": "koszul_module", **docs.module_payload(m)}}, points)
    docs.write_json(path, payload)


def test_reduce_amplitude_cli(capsys, tmp_path):
    ipath = tmp_path / "in.json"
    wpath = tmp_path / "w.json"
    _write_module_doc(ipath, corpus.by_name("fk_xy").module)
    code, lines = run(capsys, ["reduce-amplitude", "--input", str(ipath),
                               "--witness", str(wpath)])
    assert code == 0
    assert "reduction_steps=2" in lines
    assert "degrees=-2..-1" in lines
    assert lines[-1] == "status=ok"
    code, lines = run(capsys, ["witness-check", "--witness", str(wpath)])
    assert code == 0


def test_reduce_amplitude_on_minimal_module(capsys, tmp_path):
    ipath = tmp_path / "in.json"
    _write_module_doc(ipath, corpus.by_name("a1_module").module)
    code, lines = run(capsys, ["reduce-amplitude", "--input", str(ipath)])
    assert code == 0
    assert "reduction_steps=0" in lines


def test_reduce_codim_plain(capsys, tmp_path):
    opath = tmp_path / "red.json"
    code, lines = run(capsys, ["reduce-codim", "--input", KUV,
                               "--output", str(opath)])
    assert code == 0
    assert "potentials_in=2" in lines
    assert "potentials_out=1" in lines
    assert "vars=u,v,t1" in lines
    assert "potential=u*t1 + v" in lines
    code, lines = run(capsys, ["validate", "--input", str(opath)])
    assert code == 0


def test_reduce_codim_then_fold(capsys):
    code, lines = run(capsys, ["reduce-codim", "--input", KUV,
                               "--then", "fold", "--points", "origin"])
    assert code == 0
    assert "residue_homology[origin]=even=0 odd=0" in lines
    assert lines[-1] == "status=ok"


def test_reduce_codim_witness_needs_fold(capsys, tmp_path):
    code, lines = run(capsys, ["reduce-codim", "--input", KUV,
                               "--witness", str(tmp_path / "w.json")])
    assert code == 3
    assert "--then fold" in lines[-1]


# ---------------------------------------------------------------------------
# residue homology and operators
# ---------------------------------------------------------------------------

def test_residue_homology_of_fold_output(capsys, tmp_path):
    opath = tmp_path / "folded.json"
    run(capsys, ["fold", "--input", M3, "--points", "origin,axis",
                 "--output", str(opath)])
    code, lines = run(capsys, ["residue-homology", "--input", str(opath)])
    assert code == 0
    assert "residue_homology[origin]=even=2 odd=2" in lines
    code, lines = run(capsys, ["residue-homology", "--input", str(opath),
                               "--points", "axis"])
    assert code == 0
    assert lines[1] == "residue_homology[axis]=even=0 odd=0"


def test_residue_homology_origin_off_hypersurface(capsys, tmp_path):
    ring = polynomial_ring(rationals(), ("x",))
    payload = docs.document_payload(
        ring, (parse_poly("x + 1", ring),),
        {"a": {"type": "mf", "f": "x + 1", "r0": 1, "r1": 1,
               "phi0": [["1"]], "phi1": [["x + 1"]]}})
    ipath = tmp_path / "in.json"
    docs.write_json(ipath, payload)
    code, lines = run(capsys, ["residue-homology", "--input", str(ipath)])
    assert code == 3
    assert "origin" in lines[0]


def test_eisenbud_kuv(capsys, tmp_path):
    opath = tmp_path / "ops.json"
    code, lines = run(capsys, ["eisenbud", "--input", KUV,
                               "--output", str(opath)])
    assert code == 0
    assert "operators=1" in lines
    assert "eisenbud_1=valid" in lines
    assert lines[-1] == "status=ok"
    code, lines = run(capsys, ["validate", "--input", str(opath)])
    assert code == 0


def test_eisenbud_three_potentials_commute(capsys, tmp_path):
    ipath = tmp_path / "in.json"
    _write_module_doc(ipath, corpus.by_name("fk_xyz").module)
    code, lines = run(capsys, ["eisenbud", "--input", str(ipath)])
    assert code == 0
    assert "operators=2" in lines
    assert "commute_1_2=ok" in lines


def test_eisenbud_needs_two_potentials(capsys):
    code, lines = run(capsys, ["eisenbud", "--input", M3])
    assert code == 3


# ---------------------------------------------------------------------------
# exit codes and flag plumbing
# ---------------------------------------------------------------------------

def test_parse_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, lines = run(capsys, ["validate", "--input", str(bad)])
    assert code == 2
    assert lines[0].startswith("error=parse")


def test_missing_file_exit_2(capsys, tmp_path):
    code, lines = run(capsys, ["validate", "--input",
                               str(tmp_path / "absent.json")])
    assert code == 2


def test_inline_point_with_unknown_variable_exit_2(capsys):
    code, lines = run(capsys, ["fold", "--input", M3, "--point", "z=0"])
    assert code == 2
    assert lines[0].startswith("error=parse")


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["fold", "--bogus"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_seed_flag_is_accepted(capsys):
    code, lines = run(capsys, ["validate", "--input", A1, "--seed", "7"])
    assert code == 0
    assert lines == ["a1=valid", "status=ok"]
