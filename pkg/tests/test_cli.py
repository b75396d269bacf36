import json
import subprocess
import sys

import pytest

from dirackit.cli import run


def run_json(capsys, *argv):
    code = run(list(argv) + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_check_dirac_on_the_twisted_graph(capsys):
    code, doc = run_json(capsys, "check-dirac", "r4_twisted_graph", "--only", "dirac")
    assert code == 0
    (check,) = doc["scenarios"][0]["checks"]
    assert check["observed"] == {"verdict": "pass", "rank": 4, "isotropic": True, "involutive": True}


def test_admissible_ad_hoc_functions(capsys):
    code, doc = run_json(capsys, "admissible", "r4_twisted_graph", "--structure", "L",
                         "--functions", "x1", "x2", "y1", "1+x1^2", "--only", "admissible_cli")
    assert code == 0
    (check,) = doc["scenarios"][0]["checks"]
    assert check["observed"]["admissible"] == [True, False, False, True]


def test_poisson_table_text(capsys):
    code = run(["poisson-table", "r2_symplectic", "--only", "poisson_graph"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.splitlines()
    header = next(i for i, line in enumerate(lines) if "{f,g}" in line)
    assert lines[header].split() == ["{f,g}", "x", "y", "x*y", "x^2", "+", "y"]
    assert lines[header + 2].split() == ["x", "0", "-1", "-x", "-1"]
    widths = {len(lines[header + k]) for k in range(6)}
    assert len(widths) == 1


def test_poisson_table_json(capsys):
    code, doc = run_json(capsys, "poisson-table", "r2_symplectic", "--only", "poisson_bivector")
    assert code == 0
    check = doc["scenarios"][0]["checks"][0]
    assert check["observed"]["table"][0] == ["0", "x", "x^2"]


def test_validate_reports_byte_offset(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_bytes(b'{"patch": ["x"],\n "forms": {"w": "dx +* x"}}')
    code = run(["validate", str(bad)])
    err = capsys.readouterr().err
    assert code == 2
    assert "forms.w (byte 38)" in err


def test_validate_ok(capsys):
    assert run(["validate", "r3_twist_basic"]) == 0
    assert "valid" in capsys.readouterr().out


def test_unknown_scenario_is_exit_2(capsys):
    assert run(["check-dirac", "no_such_scenario"]) == 2


def test_failing_check_is_exit_1(tmp_path, capsys):
    doc = {"patch": ["x", "y"], "structures": {"N": {"generators": [{"vector": "@x", "form": "dx"}]}},
           "checks": [{"name": "n", "kind": "dirac", "structure": "N"}]}
    path = tmp_path / "n.json"
    path.write_text(json.dumps(doc))
    assert run(["check-dirac", str(path)]) == 1
    out = capsys.readouterr().out
    assert "[FAIL] n" in out
    assert "witness" in out


def test_only_filters_checks(capsys):
    code, doc = run_json(capsys, "leibniz-check", "sl2_hemisemidirect", "--only", "sl2_is_lie")
    assert code == 0
    assert [c["name"] for c in doc["scenarios"][0]["checks"]] == ["sl2_is_lie"]


@pytest.mark.parametrize("sub, scenario", [
    ("action-check", "r4_dirac_action"),
    ("moment-check", "r4_dirac_action"),
    ("moment-check", "r2_translation_moment"),
    ("leibniz-check", "sl2_hemisemidirect"),
])
def test_subcommands_pass_on_bundled(capsys, sub, scenario):
    assert run([sub, scenario]) == 0


def test_golden_suite_exit_zero(capsys):
    code, doc = run_json(capsys, "paper-suite", "--seed", "5")
    assert code == 0
    assert len(doc["scenarios"]) == 6
    assert doc["ok"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dirackit", "validate", "r2_symplectic"],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
