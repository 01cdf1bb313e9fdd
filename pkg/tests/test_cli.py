import csv
import io
import json
import re
import subprocess
import sys

import pytest

from infosym import cli
from infosym.bdd import Manager
from infosym.errors import InvariantError

from conftest import FIXTURES


@pytest.fixture
def run(capsys, caplog):
    """(exit code, stdout, diagnostics) of one CLI invocation."""
    def invoke(*argv):
        caplog.clear()
        code = cli.main([str(a) for a in argv])
        return code, capsys.readouterr().out, caplog.text
    return invoke


@pytest.fixture
def ex4(tmp_path):
    path = tmp_path / "ex4.tt"
    path.write_text("1100000111000010\n")
    return path


def test_analyze_pairs4(run, ex4):
    code, out, _ = run("analyze", ex4)
    assert code == 0
    assert "NE{x2,x3}" in out and "M{x1,x4}" in out and "summary: (2,2)" in out


def test_analyze_epair3_json(run):
    code, out, _ = run("analyze", FIXTURES / "bench" / "ex5.tt", "--output", "json")
    assert code == 0
    data = json.loads(out)
    assert data["outputs"][0]["pairs"] == [{"i": 1, "j": 2, "kind": "E", "vacuous": False}]


def test_analyze_multi_output(run):
    code, out, _ = run("analyze", FIXTURES / "adder3.blif", "--per-output")
    assert code == 0
    assert "summary: (3,1) (2,2)" in out
    assert "{cin,a0,b0} NE" in out and "output s0:" in out


def test_analyze_vacuous_flag(run, tmp_path):
    path = tmp_path / "x3.pla"
    path.write_text(".i 3\n.o 1\n--1 1\n.e\n")
    _, plain, _ = run("analyze", path)
    _, wide, _ = run("analyze", path, "--include-vacuous")
    assert "M{x1,x2}*" in plain and "groups: none" in plain
    assert "{x1,x2} M" in wide


def test_broken_pla_exit_1(run):
    code, out, err = run("analyze", FIXTURES / "broken.pla")
    assert code == 1 and out == "" and "line 3" in err


def test_missing_file_exit_1(run, tmp_path):
    assert run("analyze", tmp_path / "nope.tt")[0] == 1


def test_limit_exit_2(run, ex4):
    code, _, err = run("analyze", ex4, "--max-vars", "3")
    assert code == 2 and "maximum" in err


def test_invariant_exit_3(run, ex4, monkeypatch):
    def broken(self):
        raise InvariantError("node 7: children equal")
    monkeypatch.setattr(Manager, "audit", broken)
    code, _, err = run("analyze", ex4)
    assert code == 3 and "invariant" in err


def test_entropy_or_nor3(run):
    code, out, _ = run("entropy", FIXTURES / "ex8.pla")
    assert code == 0
    assert "H(f|x1) = 0.41" in out and "H(f|x2) = 0.91" in out and "H(f|x3) = 0.91" in out
    # 5 of 8 assignments are ones: 0.954 bits
    assert "H(f) = 0.95" in out


def test_entropy_set(run):
    code, out, _ = run("entropy", FIXTURES / "ex8.pla", "--set", "x1,x2")
    assert code == 0 and "H(f|x1,x2) = 0.25" in out
    assert run("entropy", FIXTURES / "ex8.pla", "--set", "x9")[0] == 1


def test_entropy_constant(run):
    code, out, _ = run("entropy", FIXTURES / "const0.tt")
    assert code == 0
    values = re.findall(r"= (\d+\.\d+)", out)
    assert len(values) == 7 and set(values) == {"0.00"}


def test_entropy_json_and_csv(run):
    _, out, _ = run("entropy", FIXTURES / "ex8.pla", "--output", "json", "--set", "x1,x2")
    rec = json.loads(out)["outputs"][0]
    assert rec["H_given_set"] == pytest.approx(0.25, abs=0.005)
    _, out, _ = run("entropy", FIXTURES / "ex8.pla", "--output", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["output", "var", "h0", "h1", "hcond"] and len(rows) == 4


def bench_rows(out):
    return list(csv.DictReader(io.StringIO(out)))


@pytest.mark.parametrize("jobs", ["1", "2"])
def test_bench_fixture_dir(run, jobs):
    code, out, _ = run("bench", FIXTURES / "bench", "--jobs", jobs)
    assert code == 0
    rows = bench_rows(out)
    assert [r["circuit"] for r in rows] == ["ex4", "ex5", "ex7"]
    assert [r["summary"] for r in rows] == ["(2,2)", "(2,1)", "(3,1)"]
    assert all(float(r["time_seconds"]) >= 0 for r in rows)


def test_bench_skips_unparsable(run, tmp_path):
    (tmp_path / "a.tt").write_text("00010111")
    (tmp_path / "b.pla").write_text(".i 2\n.o 1\n1x 1\n")
    (tmp_path / "notes.md").write_text("ignored")
    code, out, err = run("bench", tmp_path)
    assert code == 0 and [r["circuit"] for r in bench_rows(out)] == ["a"]
    assert "b.pla" in err


def test_bench_text(run):
    code, out, _ = run("bench", FIXTURES / "bench", "--output", "text")
    assert code == 0 and len(out.splitlines()) == 3 and "(3,1)" in out


def test_bench_empty_dir(run, tmp_path):
    assert run("bench", tmp_path)[0] == 1
    assert run("bench", tmp_path / "missing")[0] == 1


def _strip_time(text, fmt):
    if fmt == "json":
        data = json.loads(text)
        data.pop("time_seconds")
        return data
    return re.sub(r"time: [\d.]+ s", "", text)


@pytest.mark.parametrize("fmt", ["text", "json"])
def test_deterministic_output(run, fmt):
    path = FIXTURES / "adder3.blif"
    first = run("analyze", path, "--output", fmt)[1]
    second = run("analyze", path, "--output", fmt)[1]
    assert _strip_time(first, fmt) == _strip_time(second, fmt)


@pytest.mark.parametrize("path", ["adder3.blif", "ex8.pla", "bench/ex5.tt", "bench/ex7.tt"])
def test_no_filter_invariance(run, path):
    on = json.loads(run("analyze", FIXTURES / path, "--output", "json")[1])
    off = json.loads(run("analyze", FIXTURES / path, "--output", "json", "--no-filter")[1])
    on.pop("time_seconds"), off.pop("time_seconds")
    assert on == off


def test_selftest(run):
    code, out, _ = run("selftest", "--seed", "4", "--count", "40")
    assert code == 0 and "0 mismatches (seed 4)" in out


def test_console_entry_point(ex4):
    proc = subprocess.run([sys.executable, "-m", "infosym.cli", "analyze", str(ex4), "--output", "csv"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "(2,2)" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "infosym.cli", "analyze", str(FIXTURES / "broken.pla")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 1 and proc.stdout == "" and "line 3" in proc.stderr
