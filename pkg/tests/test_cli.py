import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from snailhom import cli
from snailhom.chaincx import chain_maps_equal
from snailhom.docio import DocumentError, dumps, parse_document, serialize
from snailhom.genrand import GenConfig, gen_arr_morphism, gen_chain_morphism, gen_complex, gen_extension, gen_seq_morphism
from snailhom.ring import GF, QQ, ZZ

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(argv, capsys):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def doc(obj):
    return json.dumps(obj)


def write(tmp_path, obj, name="doc.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return p


# commands ---------------------------------------------------------------

def test_homology_times2(capsys):
    code, out, _ = run(["homology", DATA / "times2_complex.json", "--json"], capsys)
    assert code == 0
    rows = {r["degree"]: r["homology"] for r in json.loads(out)["degrees"]}
    assert rows[0] == "Z/2" and rows[1] == "0"


def test_homology_single_degree(capsys):
    code, out, _ = run(["homology", DATA / "times2_complex.json", "--degree", "0"], capsys)
    assert code == 0 and "Z/2" in out


def test_longseq_quotient(capsys):
    code, out, _ = run(["longseq", DATA / "quotient_morphism.json"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "0 → Z → Z → Z/2 → 0"
    assert "✗" not in out


def test_longseq_extension_json(capsys):
    code, out, _ = run(["longseq", DATA / "times2_extension.json", "--json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["trimmed"] == ["0", "Z", "Z", "Z/2", "0"]
    assert all(rep["sequence"]["exact"].values())


def test_snail_arrow(capsys):
    code, out, _ = run(["snail", DATA / "arrow_quotient.json"], capsys)
    assert code == 0
    assert "level 0: 0 → 0 → Z/2 → Z/2 → 0 → 0" in out


def test_compare_pass_and_fail(capsys):
    code, out, _ = run(["compare", DATA / "times2_extension.json"], capsys)
    assert code == 0 and "degree-wise isomorphic: ✓" in out
    code, out, _ = run(["compare", DATA / "boundary_extension.json", "--json"], capsys)
    rep = json.loads(out)
    assert code == 1 and rep["isomorphic"] and not rep["sigma_quasi_iso"]


def test_verify_checks(capsys):
    code, out, _ = run(["verify", DATA / "quotient_morphism.json"], capsys)
    assert code == 0 and "✗" not in out
    code, out, _ = run(["verify", DATA / "arrow_quotient.json", "--checks", "interchange,exactness"], capsys)
    assert code == 0 and "interchange" in out


def test_verify_interchange_on_seq_morphism(tmp_path, capsys):
    f = gen_seq_morphism(GenConfig(seed=3), 0)
    p = write(tmp_path, dumps(ZZ, "seq_morphism", f))
    code, _, _ = run(["verify", p, "--checks", "interchange"], capsys)
    assert code == 0


def test_fuzz_small(capsys):
    code, out, _ = run(["fuzz", "--seed", "3", "--count", "4", "--ring", "Q", "--json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["passed"] == 4


def test_fuzz_example_fp5(capsys):
    code, out, _ = run(["fuzz", "--seed", "7", "--count", "100", "--ring", "Fp:5"], capsys)
    assert code == 0
    assert out.splitlines()[0].startswith("100/100 pass")


def test_fuzz_quasi_iso_reports_failure(capsys):
    code, out, _ = run(["fuzz", "--seed", "1", "--count", "30", "--checks", "quasi-iso"], capsys)
    assert code == 1 and "FAIL" in out


# input errors -----------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["homology", "/nonexistent/file.json"],
    ["fuzz", "--ring", "Fp:6"],
    ["fuzz", "--ring", "R"],
    ["fuzz", "--checks", "nonsense"],
    ["frobnicate"],
    ["verify", str(DATA / "arrow_quotient.json"), "--checks", "functor-f"],
    ["compare", str(DATA / "times2_complex.json")],
])
def test_input_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2


def test_located_errors(tmp_path, capsys):
    bad = {"ring": "Z", "kind": "complex", "support": [0, 1], "ranks": {"0": 1, "1": 1},
           "differentials": {"1": [[2, 3]]}}
    code, _, err = run(["homology", write(tmp_path, bad)], capsys)
    assert code == 2 and "differentials.1" in err
    with pytest.raises(DocumentError) as e:
        parse_document(doc(bad))
    assert "column" in str(e.value) or "columns" in str(e.value)


def test_d_squared_rejected(tmp_path, capsys):
    bad = {"ring": "Z", "kind": "complex", "support": [0, 2], "ranks": {"0": 1, "1": 1, "2": 1},
           "differentials": {"1": [[1]], "2": [[1]]}}
    code, _, err = run(["homology", write(tmp_path, bad)], capsys)
    assert code == 2 and "d" in err


def test_bad_prime_and_json(tmp_path, capsys):
    code, _, err = run(["homology", write(tmp_path, {"ring": {"Fp": 4}, "kind": "complex", "support": [0, -1]})],
                       capsys)
    assert code == 2 and "ring" in err
    code, _, _ = run(["homology", write(tmp_path, "{not json")], capsys)
    assert code == 2


def test_noncommuting_square_rejected():
    bad = {"ring": "Z", "kind": "complex_morphism",
           "source": {"support": [0, 1], "ranks": {"0": 1, "1": 1}, "differentials": {"1": [[2]]}},
           "target": {"support": [0, 1], "ranks": {"0": 1, "1": 1}, "differentials": {"1": [[2]]}},
           "maps": {"0": [[1]], "1": [[0]]}}
    with pytest.raises(DocumentError):
        parse_document(doc(bad))


def test_empty_support_is_zero_complex():
    d = parse_document(doc({"ring": "Q", "kind": "complex", "support": [0, -1]}))
    assert d.obj.lo > d.obj.hi and d.ring == QQ


def test_rational_entries():
    d = parse_document(doc({"ring": "Q", "kind": "complex", "support": [0, 1], "ranks": {"0": 1, "1": 1},
                            "differentials": {"1": [["1/2"]]}}))
    assert str(d.obj.d(1).matrix[0, 0]) == "1/2"


def test_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO((DATA / "times2_complex.json").read_text()))
    code, out, _ = run(["homology", "-", "--degree", "0"], capsys)
    assert code == 0 and "Z/2" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "snailhom", "homology", str(DATA / "times2_complex.json")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "Z/2" in r.stdout


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("SNAILHOM_THREADS", "2")
    code, out, _ = run(["fuzz", "--seed", "2", "--count", "3", "--json"], capsys)
    rep = json.loads(out)
    monkeypatch.setenv("SNAILHOM_THREADS", "1")
    code2, out2, _ = run(["fuzz", "--seed", "2", "--count", "3", "--json"], capsys)
    rep2 = json.loads(out2)
    assert code == code2 == 0
    assert rep["per_check"] == rep2["per_check"] and rep["failures"] == rep2["failures"]


# round trip ------------------------------------------------------------

@pytest.mark.parametrize("ring", [ZZ, QQ, GF(5)])
def test_round_trip(ring):
    cfg = GenConfig(seed=12, ring=ring)
    for i in range(4):
        C = gen_complex(cfg, i)
        assert parse_document(dumps(ring, "complex", C)).obj == C
        g = gen_chain_morphism(cfg, C, gen_complex(cfg, i + 10), i)
        g2 = parse_document(dumps(ring, "complex_morphism", g)).obj
        assert g2.source == g.source and g2.target == g.target and chain_maps_equal(g, g2)
        e = gen_extension(cfg, i)
        e2 = parse_document(dumps(ring, "extension", e)).obj
        assert (e2.A, e2.B, e2.C) == (e.A, e.B, e.C)
        assert chain_maps_equal(e.f, e2.f) and chain_maps_equal(e.g, e2.g)
        a = gen_arr_morphism(cfg, i)
        assert parse_document(dumps(ring, "arrow_morphism", a)).obj == a
        s = gen_seq_morphism(cfg, i)
        s2 = parse_document(dumps(ring, "seq_morphism", s)).obj
        assert s2.source == s.source and s2.target == s.target
        assert serialize(ring, "seq_morphism", s2) == serialize(ring, "seq_morphism", s)
        h = s.source
        assert parse_document(dumps(ring, "seq_family", h)).obj == h
