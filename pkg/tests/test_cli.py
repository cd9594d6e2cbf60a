import json
import subprocess
import sys

import pytest

from conftest import spec_path
from qsym.cli import main
from qsym.specfile import SpecError, loads


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, tmp_path, *argv):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, *argv, "--out", str(path))
    return code, out, json.loads(path.read_text()), path


def test_validate_q_minus1_passes(capsys, tmp_path):
    code, out, rep, _ = report(capsys, tmp_path, "validate", spec_path("rank1_q_minus1.json"))
    assert code == 0
    assert "FAIL" not in out
    assert rep["validation"]["bimodule"]["ok"] and rep["validation"]["pairing"]["ok"]
    assert set(rep) == {"command", "validation", "hilbert", "relations", "gram", "checks",
                        "timing", "exit_status"}


def test_bad_prime_is_a_spec_error(capsys):
    code, out, err = run(capsys, "validate", spec_path("bad_prime.json"))
    assert code == 2
    assert "$.field.prime" in err and out == ""


def test_broken_antipode_fails(capsys, tmp_path):
    code, out, rep, _ = report(capsys, tmp_path, "validate", spec_path("raw_broken_antipode.json"))
    assert code == 1
    assert "antipode" in out
    hopf = rep["validation"]["hopf"]
    assert not hopf["ok"]
    assert [c["name"] for c in hopf["checks"] if c["status"] == "FAIL"] == ["antipode"]


@pytest.mark.parametrize("spec,D,dims", [("rank1_f5_q2.json", 5, [1, 1, 1, 1, 0, 0]),
                                         ("rank1_q1.json", 6, [1] * 7),
                                         ("a2_q2.json", 4, [1, 2, 4, 6, 9])])
def test_hilbert(capsys, tmp_path, spec, D, dims):
    code, out, rep, _ = report(capsys, tmp_path, "hilbert", spec_path(spec), "--max-degree", str(D))
    assert code == 0
    assert rep["hilbert"]["dims"] == dims and rep["hilbert"]["agree"]
    # every number in the table is in the report
    body = [line.split() for line in out.splitlines()[2:]]
    assert [[int(r[0]), int(r[1]), int(r[2])] for r in body] == \
        [[row["n"], row["omega"], row["gram"]] for row in rep["hilbert"]["rows"]]


def test_hilbert_truncation(capsys, tmp_path):
    code, out, rep, _ = report(capsys, tmp_path, "hilbert", spec_path("a2_q2.json"),
                               "--max-degree", "8", "--cap", "40")
    assert code == 3
    assert rep["hilbert"]["truncated_at"] == 6 and rep["hilbert"]["dims"] == [1, 2, 4, 6, 9, 12]
    assert "truncated" in out


@pytest.mark.parametrize("spec,n,expected", [("a2_q2.json", 3, 2), ("rank1_q_minus1.json", 2, 1),
                                             ("rank1_generic_q2.json", 3, 0)])
def test_relations(capsys, tmp_path, spec, n, expected):
    code, out, rep, _ = report(capsys, tmp_path, "relations", spec_path(spec), "--degree", str(n))
    assert code == 0
    assert rep["relations"]["count"] == expected
    if expected == 0:
        assert "none" in out
    for item in rep["relations"]["relations"]:
        assert item["text"] in out
    if spec == "rank1_q_minus1.json":
        assert rep["relations"]["relations"][0]["text"] == "v.v"


def test_gram_round_trip(capsys, tmp_path):
    code, out, rep, _ = report(capsys, tmp_path, "gram", spec_path("rank1_generic_q2.json"),
                               "--max-degree", "3")
    assert code == 0
    blocks = rep["gram"]["degrees"]
    assert [b["matrix"] for b in blocks] == [[["1"]], [["1"]], [["3/2"]], [["21/8"]]]
    for b in blocks:
        for row in b["matrix"]:
            for x in row:
                assert x in out


def test_gram_regular_z2(capsys, tmp_path):
    code, _, rep, _ = report(capsys, tmp_path, "gram", spec_path("regular_z2_paired.json"), "--degree", "2")
    assert code == 0
    (b,) = rep["gram"]["degrees"]
    assert b["n"] == 2 and b["tensor_cot_rank"] == b["cot_dim"]


@pytest.mark.parametrize("spec,D", [("rank1_q_minus1.json", 4), ("a2_q2.json", 3)])
def test_check_passes(capsys, tmp_path, spec, D):
    code, out, rep, _ = report(capsys, tmp_path, "check", spec_path(spec), "--max-degree", str(D))
    assert code == 0, out
    assert "FAIL" not in out
    checks = rep["checks"]
    assert all(checks[k]["ok"] for k in ("induced_pairing", "radicals", "self_dual", "tensor_cot", "wedge"))


def test_check_zero_phi1(capsys, tmp_path):
    code, out, rep, _ = report(capsys, tmp_path, "check", spec_path("rank1_phi1_zero.json"))
    assert code == 1
    names = [c["name"] for c in rep["checks"]["radicals"]["checks"] if c["status"] == "FAIL"]
    assert "precondition failed" in names
    assert any(c["status"] == "skipped" for c in rep["checks"]["induced_pairing"]["checks"])


def test_check_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["check", spec_path("a2_q2.json"), "--out", str(a)])
    main(["check", spec_path("a2_q2.json"), "--out", str(b)])
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_parallel_matches_serial(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["hilbert", spec_path("a2_q2.json"), "--out", str(a)])
    main(["hilbert", spec_path("a2_q2.json"), "--out", str(b), "--parallel"])
    main(["gram", spec_path("rank1_f5_q2.json"), "--out", str(tmp_path / "c.json")])
    main(["gram", spec_path("rank1_f5_q2.json"), "--out", str(tmp_path / "d.json"), "--parallel"])
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "c.json").read_bytes() == (tmp_path / "d.json").read_bytes()


def test_timing_flag(capsys, tmp_path):
    _, _, rep, _ = report(capsys, tmp_path, "hilbert", spec_path("rank1_q1.json"), "--timing")
    assert rep["timing"]["enabled"] and "hilbert" in rep["timing"]["seconds"]


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "hilbert", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "hilbert", spec_path("rank1_q1.json"), "--max-degree", "-1")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["frobnicate", spec_path("rank1_q1.json")])
    assert e.value.code == 2
    capsys.readouterr()


def test_gram_without_pairing(capsys, tmp_path):
    p = tmp_path / "nopair.json"
    p.write_text(json.dumps({"version": 1, "field": "rationals",
                             "couple": {"type": "diagonal", "moduli": [2], "q": [["-1"]]}}))
    code, _, err = run(capsys, "gram", str(p))
    assert code == 2 and "$.pairing" in err
    code, out, _ = run(capsys, "hilbert", str(p), "--max-degree", "3")
    assert code == 0 and "dim via Gram" not in out


@pytest.mark.parametrize("text,where", [
    ("{\n  \"version\": 1,\n  oops\n}", "line 3, column 3"),
    ('{"version": 2}', "$.version"),
    ('{"version": 1, "field": "reals"}', "$.field"),
    ('{"version": 1, "field": {"prime": 6}, "couple": {}}', "$.field.prime"),
    ('{"version": 1, "field": "rationals", "couple": {"type": "diagonal", "moduli": [2], "q": [["x"]]}}',
     "$.couple.q[0][0]"),
    ('{"version": 1, "field": "rationals", "couple": {"type": "diagonal", "moduli": [3], "q": [[2]]}}',
     "$.couple"),
    ('{"version": 1, "field": "rationals", "couple": {"type": "regular", "table": [[0, 1], [1, 1]]}}',
     "$.couple"),
    ('{"version": 1, "field": "rationals", "couple": {"type": "cube"}}', "$.couple.type"),
    ('{"version": 1, "field": "rationals", "couple": {"type": "regular", "moduli": [2]},'
     ' "pairing": {"type": "explicit", "phi0": [[1]]}}', "$.pairing.phi0"),
])
def test_spec_errors_are_located(text, where):
    with pytest.raises(SpecError) as e:
        loads(text)
    assert e.value.where == where


def test_explicit_pairing_spec():
    spec = loads('{"version": 1, "field": {"prime": 5}, "couple": {"type": "regular", "moduli": [4]},'
                 ' "pairing": {"type": "explicit", "phi0": ' + json.dumps(
                     [[str(pow(2, a * b, 5)) for b in range(4)] for a in range(4)]) + '}}')
    from qsym.couple import validate_couple_pairing
    assert validate_couple_pairing(spec.pairing).ok


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "qsym.cli", "relations", spec_path("rank1_q_minus1.json"),
                          "--degree", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and "v.v" in res.stdout
