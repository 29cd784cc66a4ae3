import io
import json
import subprocess
import sys

import jsonschema
import pytest

from covertool.cli import main
from covertool.report import REPORT_SCHEMA, Report, run_full_analysis
from covertool.systems import System

ERDOS = "0(2),0(3),1(4),5(6),7(12)"


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_erdos_json(capsys):
    code, out, _ = run(capsys, "analyze", "--json", ERDOS)
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, REPORT_SCHEMA)
    by_name = {v["check"]: v for v in data["verdicts"]}
    prof = by_name["covering_profile"]["detail"]
    assert prof["min_multiplicity"] == 1 and prof["average"] == "4/3"
    assert by_name["classify[m=1]"]["detail"]["m_cover"]
    assert not by_name["classify[m=1]"]["detail"]["exact_m_cover"]
    assert by_name["thm11[alpha=0]"]["detail"]["branch"] == "Counting"
    assert by_name["thm11[alpha=5/6]"]["detail"]["branch"] == "Vanishing"
    assert by_name["cor15"]["status"] == "skipped"


def test_analyze_extremal(capsys):
    code, out, _ = run(capsys, "analyze", "--json", "@remark-1.5-k3-m1")
    data = json.loads(out)
    by_name = {v["check"]: v for v in data["verdicts"]}
    assert code == 0
    assert by_name["classify[m=1]"]["detail"]["m_system"]
    assert by_name["thm12[m=1]"]["detail"]["equality"]
    assert by_name["cor15"]["status"] == "pass"


def test_analyze_empty(capsys):
    code, out, _ = run(capsys, "analyze", "--json", "")
    data = json.loads(out)
    jsonschema.validate(data, REPORT_SCHEMA)
    assert code == 0 and data["input_system"] == ""
    assert any(v["status"] == "skipped" for v in data["verdicts"])


def test_report_round_trip():
    rep = run_full_analysis(System.of([(0, 2), (1, 4), (3, 4)]))
    data = json.loads(rep.to_json())
    jsonschema.validate(data, REPORT_SCHEMA)
    again = Report.from_dict(data)
    assert again.to_dict() == data
    with pytest.raises(ValueError):
        Report.from_dict({**data, "schema": "other/9"})


@pytest.mark.parametrize(
    "argv,code",
    [
        (["analyze", "0(0)"], 3),
        (["analyze", "0(2),x"], 3),
        (["analyze", "@no-such-system"], 3),
        ([], 3),
        (["thm11", "--alpha", "0.5", "0(1)"], 3),
        (["thm12", "--m", "1", "0(2),1(2)"], 3),
        (["analyze", "--max-sieve", "10", ERDOS], 4),
        (["enumerate", "--k", "3", "--max", "6", "--work-ceiling", "5"], 4),
        (["cor15", "0(2),1(4),3(4)"], 0),
        (["classify", "--m", "1", "0(2),1(2)"], 0),
        (["cyclo", "30"], 0),
        (["conjecture", "--k", "3", "--max", "8"], 0),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "covertool"], capture_output=True, text=True)
    assert proc.returncode == 3
    proc = subprocess.run([sys.executable, "-m", "covertool", "thm11", "--alpha", "0.5", "0(1)"],
                          capture_output=True, text=True)
    assert proc.returncode == 3


def test_thm11_text(capsys):
    code, out, _ = run(capsys, "thm11", "--alpha", "5/6", "@erdos-example-1.1")
    assert code == 0
    assert "branch=Vanishing" in out
    assert "{2,3} {1,4}" in out


def test_thm11_json_witnesses(capsys):
    code, out, _ = run(capsys, "thm11", "--json", "0(2); 0(3),1(4),5(6),7(12)")
    data = json.loads(out)
    assert data["verdict"] == "Counting"
    row = next(r for r in data["values"] if r["v"] == "1/2")
    assert [1, 3] in row["witnesses"]


def test_sums(capsys):
    code, out, _ = run(capsys, "sums", "--json", "0(2),1(2)")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "partition-ok"
    assert [(v["v"], v["count"]) for v in data["values"]] == [("0", 1), ("1/2", 2), ("1", 1)]


def test_weights_flag(capsys):
    code, out, _ = run(capsys, "sums", "--json", "--weights", "1,3", "0(2),1(4)")
    values = [v["v"] for v in json.loads(out)["values"]]
    assert values == ["0", "1/2", "3/4", "5/4"]


def test_dual_and_classify(capsys):
    code, out, _ = run(capsys, "dual", "0(2),0(3)")
    assert out.strip() == "1(2),1(3),2(3)"
    code, out, _ = run(capsys, "classify", "--json", "--m", "2", ERDOS)
    assert json.loads(out)["verdicts"][0]["detail"]["m_system"]


def test_enumerate_stream(capsys):
    code, out, err = run(capsys, "enumerate", "--k", "2", "--max", "3")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 21 and lines[0] == "0(1),0(1)"
    assert json.loads(err)["count"] == 21


def test_enumerate_disjoint_cover(capsys):
    code, out, _ = run(capsys, "enumerate", "--k", "3", "--max", "4", "--disjoint", "--cover")
    assert "0(2),1(4),3(4)" in out.splitlines()


def test_conjecture_json(capsys):
    code, out, _ = run(capsys, "conjecture", "--json", "--k", "3", "--max", "8")
    data = json.loads(out)
    assert data["verified"] and data["counterexamples"] == [] and "moduli <= 8" in data["note"]


def test_dsemigroup(capsys):
    code, out, _ = run(capsys, "dsemigroup", "--json", "6", "1")
    assert json.loads(out)["member"] is False


def test_file_and_stdin_inputs(capsys, tmp_path, monkeypatch):
    f = tmp_path / "cover.txt"
    f.write_text("0(2)\n1(4)\n3(4)\n")
    assert run(capsys, "newman-znam", str(f))[0] == 0
    g = tmp_path / "cover.json"
    g.write_text(json.dumps({"classes": [{"a": 0, "n": 2}, {"a": 1, "n": 2}]}))
    code, out, _ = run(capsys, "cert-lemma21", "--json", "--m", "1", str(g))
    assert code == 0 and json.loads(out)["verdicts"][0]["detail"]["literal_division"]
    monkeypatch.setattr(sys, "stdin", io.StringIO("0(2),1(2)"))
    assert run(capsys, "cor31", "--m", "1", "-")[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["cor11", "@erdos-example-1.1"],
        ["cor12", ERDOS],
        ["cor13", "--J", "2,3", "@erdos-example-1.1"],
        ["cor14", "--r", "1", "0(2),1(4),3(4)"],
        ["thm13", "--m", "2", ERDOS],
        ["thm31", "--m", "2", ERDOS],
        ["lemma31", "--m", "1", ERDOS],
        ["classical", "0(2),1(4),3(4)"],
        ["thm12", "--m", "2", "@remark-1.5-k4-m2"],
    ],
)
def test_single_checks_validate(capsys, argv):
    code, out, _ = run(capsys, argv[0], "--json", *argv[1:])
    assert code == 0
    jsonschema.validate(json.loads(out), REPORT_SCHEMA)


def test_schema_and_corpus(capsys):
    code, out, _ = run(capsys, "schema")
    assert json.loads(out) == REPORT_SCHEMA
    code, out, _ = run(capsys, "corpus")
    assert "@erdos-example-1.1" in out
