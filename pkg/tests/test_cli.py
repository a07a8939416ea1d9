import json
import subprocess
import sys

import pytest

from realorbits.cli import main
from realorbits.families import build_sl_so
from realorbits.report import ClassificationReport, classify
from realorbits.specfile import dump_spec


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "--family", "sl-so", "--p", "2", "--q", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["counts"] == {"twisted": 2}
    assert [o["signature"] for o in data["orbits"]] == [[2, 1], [0, 3]]
    assert [o["size"] for o in data["orbits"]] == [3, 1]
    assert data["orbits"][1]["diag"] == "diag(-1,-1,1)"
    assert data["engine"]["state_count"] == 4


def test_classify_compare(capsys):
    code, out, _ = run(capsys, "classify", "--family", "sl-so", "--p", "1", "--q", "1", "--compare", "--format", "json")
    assert code == 0
    counts = json.loads(out)["counts"]
    assert counts["twisted"] == 1 and counts["plain_w0"] == 2


@pytest.mark.parametrize("mode, count", [("plain-w00", 5), ("plain-w0", 3), ("twisted", 3)])
def test_classify_modes(capsys, mode, count):
    code, out, _ = run(capsys, "classify", "--family", "sl-so", "--p", "2", "--q", "2", "--mode", mode, "--format", "json")
    assert code == 0
    assert len(json.loads(out)["orbits"]) == count


def test_classify_table_text(capsys):
    code, out, _ = run(capsys, "classify", "--family", "sl-so", "--p", "2", "--q", "2")
    assert code == 0
    assert "twisted=3" in out and "s'_1" in out


def test_classify_engines_agree(capsys):
    outs = []
    for engine in ("bfs", "union_find"):
        code, out, _ = run(capsys, "classify", "--family", "sl-so", "--p", "3", "--q", "3", "--engine", engine, "--format", "json")
        assert code == 0
        outs.append(json.loads(out)["orbits"])
    assert outs[0] == outs[1]


def test_classify_spec_file(capsys, tmp_path):
    path = tmp_path / "a.json"
    dump_spec(build_sl_so(3, 2), path)
    code, out, _ = run(capsys, "classify", "--spec", str(path), "--format", "json")
    assert code == 0
    assert len(json.loads(out)["orbits"]) == 3


def test_bad_spec_exits_1(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"moduli": [2, 2], "states": {"all": true}, "generators": [{"label": "a"}]}')
    code, _, err = run(capsys, "classify", "--spec", str(path))
    assert code == 1
    assert "generators[0]" in err
    path.write_text("{not json")
    assert run(capsys, "classify", "--spec", str(path))[0] == 1
    assert run(capsys, "classify", "--spec", str(tmp_path / "missing.json"))[0] == 1


def test_limit_exits_2(capsys):
    code, _, err = run(capsys, "classify", "--family", "sl-so", "--p", "6", "--q", "6", "--limit", "10")
    assert code == 2
    assert "limit" in err


def test_rank_limit_exits_2(capsys):
    assert run(capsys, "classify", "--family", "sl-so", "--p", "20", "--q", "20")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--family", "sl-so", "--p", "0", "--q", "2"],
        ["classify", "--family", "sl-so", "--p", "2"],
        ["classify", "--family", "gl", "--p", "2", "--q", "2"],
        ["classify", "--p", "x"],
        ["table"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    # argparse errors raise SystemExit; validation errors return the code
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == 1


def test_table_rows(capsys):
    code, out, _ = run(capsys, "table", "--family", "sl-so", "--max-n", "4", "--format", "json")
    assert code == 0
    rows = {(r["p"], r["q"]): r for r in json.loads(out)["rows"]}
    assert (rows[(2, 2)]["twisted"], rows[(2, 2)]["plain_w00"], rows[(2, 2)]["match"]) == (3, 5, False)
    assert (rows[(1, 1)]["twisted"], rows[(1, 1)]["plain_w00"]) == (1, 2)
    assert (rows[(2, 1)]["twisted"], rows[(2, 1)]["plain_w00"], rows[(2, 1)]["match"]) == (2, 3, False)
    assert len(rows) == 6


def test_table_text_is_deterministic(capsys):
    first = run(capsys, "table", "--max-n", "6")[1]
    second = run(capsys, "table", "--max-n", "6")[1]
    assert first == second
    line = next(l for l in first.splitlines() if l.split()[:3] == ["2", "2", "4"])
    assert line.split()[3:] == ["3", "5", "mismatch"]


def test_report_round_trip():
    report = classify(build_sl_so(3, 3), family="sl_so", mode="twisted", p=3, q=3, compare=True)
    again = ClassificationReport.from_json(report.to_json())
    assert again == report
    data = report.to_dict()
    data["orbits"][0]["future_field"] = 1
    data["extra"] = {"ignored": True}
    assert ClassificationReport.from_dict(data) == report


def test_selftest_ok(capsys):
    code, out, _ = run(capsys, "selftest", "--max-n", "6")
    assert code == 0
    assert out.strip().endswith("selftest: ok")


def test_selftest_single_suite(capsys):
    code, out, _ = run(capsys, "selftest", "--suite", "cocycle", "--max-n", "5")
    assert code == 0
    names = [l.split()[0] for l in out.splitlines() if "checks" in l]
    assert names == ["cocycle"]


def test_selftest_detects_fault(capsys):
    code, out, _ = run(capsys, "selftest", "--suite", "families", "--suite", "signature", "--max-n", "6", "--inject-fault", "zero-crossing-twist")
    assert code == 1
    assert "FAIL" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "realorbits", "classify", "--family", "sl-so", "--p", "1", "--q", "1", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["counts"]["twisted"] == 1
