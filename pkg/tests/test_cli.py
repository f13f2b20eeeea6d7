import json
import subprocess
import sys

import pytest

from conicstab.cli import main, parse_transform
from conicstab.textio import Space
from helpers import DET3, P

DET2 = "z11*z22 - z12^2"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def doc(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_check_clean_and_counterexample(capsys):
    code, d = doc(capsys, "check", DET2, "--space", "sym:2", "--trials", "50")
    assert code == 0 and d["schema"] == "conicstab.result/1"
    assert d["result"]["verdict"]["outcome"] == "clean"
    assert d["inputs"]["seed"] == 0 and d["inputs"]["trials"] == 50
    code, d = doc(capsys, "check", "z1*z2 + 1", "--space", "vector:2", "--trials", "20")
    assert code == 0 and d["result"]["verdict"]["outcome"] == "counterexample"


def test_check_polyhedral_cone(capsys):
    code, d = doc(capsys, "check", "z1 - z2", "--space", "vector:2", "--cone", "poly:[1,0;1,1]", "--trials", "50")
    assert d["result"]["verdict"]["cone"] == "poly:[1,0;1,1]" and d["result"]["verdict"]["outcome"] == "clean"


def test_byte_identical_runs(capsys):
    args = ("check", "z1^2*z2 - 3*z2 + (1-1i)", "--space", "vector:2", "--seed", "4", "--trials", "60")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    args = ("support", DET3, "--space", "sym:3")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_global_flags_in_either_position(capsys):
    _, d1 = doc(capsys, "--seed", "3", "--trials", "9", "check", "z1", "--space", "vector:1")
    _, d2 = doc(capsys, "check", "z1", "--space", "vector:1", "--seed", "3", "--trials", "9")
    assert d1["result"] == d2["result"] and d1["inputs"]["seed"] == 3


def test_usage_errors_exit_1(capsys):
    assert run(capsys, "check", "z1 +", "--space", "vector:2")[0] == 1
    assert run(capsys, "check", "z1")[0] == 1
    assert run(capsys, "transform", "z1", "--space", "vector:1", "--spec", "bogus(i=1)")[0] == 1
    assert run(capsys, "transform", "z1*z2", "--space", "vector:2", "--spec", "scale(a=[1,-1])")[0] == 1
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 1


def test_transform_language_is_one_based():
    sp = Space.parse("sym:3")
    spec = parse_transform("psd_minor(J=[1,3])", sp)
    assert spec.params["J"] == [0, 2]
    spec = parse_transform("specialize(i=2, b=[0.5, 1])", Space.parse("vector:3"))
    assert spec.params == {"i": 1, "b": 0.5 + 1j}
    spec = parse_transform('lieb_sokal(g="z1*z2", v=[1,0])', Space.parse("vector:2"))
    assert spec.params["g"] == P("z1*z2")
    spec = parse_transform("psd_inversion", sp)
    assert spec.kind == "psd_inversion" and spec.params == {}


def test_transform_apply_and_audit(capsys):
    code, d = doc(capsys, "transform", "z1*z2 - 1", "--space", "vector:2", "--spec", "invert(i=1)")
    assert code == 0 and d["result"]["output"] == "-z1 - z2"
    code, d = doc(capsys, "transform", DET2, "--space", "sym:2", "--spec",
                  "psd_dir_derivative(V=[[1,1],[1,1]])", "--audit", "--trials", "50")
    audit = d["result"]["audit"]
    assert code == 0 and audit["output"] == "z11 - 2*z12 + z22" and audit["licensed"] and audit["agreement"]
    code, d = doc(capsys, "transform", DET3, "--space", "sym:3", "--spec",
                  "psd_initial_form(W=[[4,4,6],[4,4,6],[6,6,0]])", "--audit", "--trials", "20")
    audit = d["result"]["audit"]
    assert code == 0 and not audit["licensed"] and audit["output_verdict"]["outcome"] == "counterexample"


def test_audit_failure_exit_2(capsys, monkeypatch):
    # force a licensed clean-in/counterexample-out event by lying about the output
    import conicstab.preservers as pres
    real = pres.apply
    monkeypatch.setattr(pres, "apply", lambda spec, f: P("z1*z2 + 1") if spec.kind == "permute" else real(spec, f))
    code, d = doc(capsys, "transform", "z1*z2 - 1", "--space", "vector:2", "--spec", "permute(sigma=[2,1])",
                  "--audit", "--trials", "30")
    assert code == 2 and d["exit_code"] == 2 and not d["result"]["audit"]["agreement"]


def test_support_and_conjecture(capsys):
    code, d = doc(capsys, "support", "z1^3 - 1", "--space", "vector:1")
    assert d["result"]["report"]["jump_system"] is False
    code, d = doc(capsys, "conjecture", DET3, "--space", "sym:3", "--kinds", "transposition")
    assert code == 0 and d["result"]["all_found"] and len(d["result"]["searches"]) == 5
    assert run(capsys, "conjecture", "z1", "--space", "vector:1")[0] == 1


def test_detpoly(capsys):
    code, d = doc(capsys, "detpoly", "--blocks", "2,1", "--term", "0,0=1", "--term", "1,0=2", "--term", "2,0=1")
    rep = d["result"]["report"]
    assert code == 0 and rep["interval_property"] and rep["jump_system"] and rep["block_size_ok"]


def test_corpus_out_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    assert main(["corpus", "--trials", "50", "--out-file", str(target)]) == 0
    assert capsys.readouterr().out == ""
    d = json.loads(target.read_text())
    assert d["result"]["failed"] == [] and d["result"]["passed"] == 18


def test_corpus_subset(capsys):
    code, d = doc(capsys, "corpus", "--key", "monomial-remark/z12", "--key", "initial-form-example/iI3")
    assert code == 0 and [e["key"] for e in d["result"]["entries"]] == ["monomial-remark/z12",
                                                                         "initial-form-example/iI3"]


def test_text_output(capsys):
    code, out, _ = run(capsys, "check", DET2, "--space", "sym:2", "--trials", "10", "--out", "text")
    assert "outcome: clean" in out and "schema: conicstab.result/1" in out


def test_timing_flag(capsys):
    _, d = doc(capsys, "check", "z1", "--space", "vector:1", "--trials", "5", "--timing")
    assert d["timing_seconds"] >= 0
    _, d = doc(capsys, "check", "z1", "--space", "vector:1", "--trials", "5")
    assert "timing_seconds" not in d


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "conicstab", "check", "z12", "--space", "sym:2", "--trials", "5"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["result"]["verdict"]["found_by"] == "pre-pass i*I"
