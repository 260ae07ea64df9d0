"""Suite registry, report format and the exlie-verify command line."""

import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from exlie import cli, suites


def test_registry_partitions_all():
    everything = [s.id for s in suites.suite_checks("all")]
    assert len(everything) == len(set(everything))
    per_suite = sorted(i for name in suites.SUITES for i in (s.id for s in suites.suite_checks(name)))
    assert per_suite == sorted(everything)
    assert all(suites.suite_checks(name) for name in suites.SUITES)
    with pytest.raises(KeyError):
        suites.suite_checks("g2")


def test_duplicate_ids_rejected():
    cid = suites.suite_checks("tables")[0].id
    with pytest.raises(ValueError):
        suites.check("tables", cid, "", "")(lambda ctx: None)


@given(st.integers(0, 2 ** 64 - 1), st.text(max_size=20))
def test_check_seed_is_stable_and_in_range(root, cid):
    s = suites.check_seed(root, cid)
    assert s == suites.check_seed(root, cid)
    assert 0 <= s < 2 ** 64


def test_check_seeds_differ_between_checks():
    ids = [s.id for s in suites.suite_checks("all")]
    assert len({suites.check_seed(42, i) for i in ids}) == len(ids)


def test_within():
    assert suites.within(1.0 + 1e-10, 1.0, 1e-9)
    assert not suites.within(1.1, 1.0, 1e-9)
    assert suites.within([1, {"a": 2}], (1, {"a": 2}), 0)
    assert not suites.within({"a": 1}, {"a": 1, "b": 2}, 0)
    assert not suites.within(True, 1, 0)
    assert suites.within("pass", "pass", 0) and not suites.within("x", "pass", 0)
    assert not suites.within([1], [1, 2], 0)


def test_config_validation():
    with pytest.raises(ValueError):
        suites.Config(backend="gpu")
    with pytest.raises(ValueError):
        suites.Config(samples=0)
    with pytest.raises(ValueError):
        suites.Config(tol=float("nan"))


def _spec(fn):
    return suites.CheckSpec("tmp.check", "tables", "temporary", "-", fn)


def test_crashing_check_becomes_failure():
    def boom(ctx):
        raise ZeroDivisionError("no")
    r = suites._run_one(_spec(boom), suites.Config())
    assert r.status == "fail" and "ZeroDivisionError" in r.details["error"]
    assert "traceback" in r.details


def test_outcome_decides_status():
    ok = suites._run_one(_spec(lambda ctx: suites.Outcome(3, 3)), suites.Config())
    bad = suites._run_one(_spec(lambda ctx: suites.Outcome(0.1, 0.0, 1e-3)), suites.Config())
    forced = suites._run_one(_spec(lambda ctx: suites.Outcome(1, 2, passed=True)), suites.Config())
    assert (ok.status, bad.status, forced.status) == ("pass", "fail", "pass")


@pytest.fixture(scope="module")
def tables_report():
    return suites.run_suite("tables", suites.Config())


def test_report_shape(tables_report):
    d = json.loads(tables_report.to_json())
    assert set(d) == {"suite", "seed", "backend", "calibration", "checks", "status", "version"}
    keys = {"id", "description", "reference", "status", "measured", "expected", "tolerance", "runtime_ms", "details"}
    assert all(set(c) == keys for c in d["checks"])
    assert [c["id"] for c in d["checks"]] == sorted(c["id"] for c in d["checks"])
    assert d["status"] == "pass" and tables_report.passed
    assert "runtime_ms" not in tables_report.as_dict(runtimes=False)["checks"][0]


def test_markdown_report(tables_report):
    md = tables_report.to_markdown()
    assert md.startswith("# Suite `tables`: PASS")
    assert md.count("\n| ") == len(tables_report.checks) + 1


def test_reports_are_reproducible(tables_report):
    again = suites.run_suite("tables", suites.Config(jobs=3))
    assert again.to_json(runtimes=False) == tables_report.to_json(runtimes=False)


def test_exit_codes(monkeypatch, tmp_path, capsys, tables_report):
    monkeypatch.setattr(cli, "run_suite", lambda name, config: tables_report)
    out = tmp_path / "r.json"
    assert cli.main(["tables", "--format", "json", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["suite"] == "tables"
    assert cli.main(["tables"]) == 0
    assert capsys.readouterr().out.startswith("# Suite")

    failing = suites.SuiteReport("tables", 42, {}, {}, [], "fail")
    monkeypatch.setattr(cli, "run_suite", lambda name, config: failing)
    assert cli.main(["tables"]) == 1

    def broken(name, config):
        raise RuntimeError("no conventions")
    monkeypatch.setattr(cli, "run_suite", broken)
    assert cli.main(["tables"]) == 1
    assert "no conventions" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["nope"], ["tables", "--seed", "-1"], ["tables", "--jobs", "0"],
                                  ["tables", "--backend", "gpu"], ["tables", "--tol", "0"],
                                  ["tables", "--format", "xml"]])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as e:
        cli.main(argv)
    assert e.value.code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "exlie.cli", "tables", "--format", "json"],
                       capture_output=True, text=True, timeout=600)
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["status"] == "pass"
