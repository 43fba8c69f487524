"""Command-line behavior: exit codes, output formats, determinism."""

import json
import subprocess
import sys
from importlib import resources

import pytest

from godeaux import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def load_raw(name):
    return json.loads(resources.files("godeaux.data").joinpath(name).read_text())


class TestCanring:
    def test_structured_success(self, capsys):
        code, out, _ = run_cli(capsys, "canring", "--format", "structured")
        assert code == 0
        doc = json.loads(out)
        assert doc["generators"]["computed"]["degrees"] == [
            2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5]
        assert doc["relations"]["total"] == 54
        assert all(c["status"] == "OK" for c in doc["checks"])

    def test_determinism_across_jobs(self, capsys):
        outputs = []
        for jobs in ("1", "3"):
            code, out, _ = run_cli(capsys, "canring", "--format", "structured",
                                   "--jobs", jobs)
            assert code == 0
            outputs.append(out)
        assert outputs[0] == outputs[1]

    def test_truncated_horizon_skips_relations(self, capsys):
        code, out, _ = run_cli(capsys, "canring", "--max-degree", "5",
                               "--format", "structured")
        assert code == 0
        doc = json.loads(out)
        assert doc["relations"]["status"] == "SKIPPED"
        statuses = {c["name"]: c["status"] for c in doc["checks"]}
        assert statuses["relation-profile"] == "SKIPPED"
        assert statuses["generator-profile"] == "OK"

    def test_text_mode(self, capsys):
        code, out, _ = run_cli(capsys, "canring")
        assert code == 0
        assert "generator degrees: 2 2 3 3 3 3 4 4 4 4 5 5 5" in out
        assert "check hilbert-consistency: OK" in out


class TestVerify:
    def test_tricanonical(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "tricanonical",
                               "--format", "structured")
        assert code == 0
        doc = json.loads(out)
        assert doc["status"] == "OK"
        assert doc["kernel_dimensions"]["9"] == 1
        assert doc["assignment"] == [0, 1, 2, 3]

    def test_paper_generators(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "paper-generators",
                               "--format", "structured")
        assert code == 0
        doc = json.loads(out)
        assert doc["ok"]
        assert len(doc["members"]) == 13

    def test_base_locus(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "base-locus",
                               "--format", "structured")
        assert code == 0
        doc = json.loads(out)
        verdicts = {m: doc["reports"][m]["verdict"] for m in ("m2", "m3", "m5")}
        assert verdicts == {"m2": "NONEMPTY", "m3": "EMPTY", "m5": "EMPTY"}

    def test_base_locus_undecided_exit(self, capsys, tmp_path):
        raw = load_raw("godeaux.json")
        raw["base_locus"]["degree_bound"] = 5
        path = tmp_path / "short.json"
        path.write_text(json.dumps(raw))
        code, out, _ = run_cli(capsys, "verify", "base-locus",
                               "--instance", str(path))
        assert code == 3
        assert "UNDECIDED" in out

    def test_fourcanonical_reports_mismatch(self, capsys):
        # computed second differences are 20, 16, 15; the expectation of a
        # constant 16 fails and the command says so honestly
        code, out, _ = run_cli(capsys, "verify", "fourcanonical",
                               "--format", "structured")
        assert code == 1
        doc = json.loads(out)
        assert doc["second_differences"] == {"3": 20, "4": 16, "5": 15}
        assert doc["expected_second_difference"] == 16
        statuses = [c["status"] for c in doc["checks"]]
        assert statuses == ["FAIL", "OK", "FAIL"]


class TestTopology:
    def test_shipped_data(self, capsys):
        code, out, _ = run_cli(capsys, "topology", "--format", "structured")
        assert code == 0
        doc = json.loads(out)
        assert doc["chain_homology"] == [[1, []], [0, []], [9, []], [1, []], [1, []]]
        assert doc["mayer_vietoris"] == doc["chain_homology"]
        assert doc["abelianization"] == [0, []]
        assert doc["fundamental_group"]["status"] == "TRIVIAL"
        assert doc["fundamental_group"]["replay_trivial"]

    def test_expectation_mismatch(self, capsys, tmp_path):
        raw = load_raw("topology.json")
        raw["expected"]["glued_homology"][1] = [1, []]
        path = tmp_path / "wrong.json"
        path.write_text(json.dumps(raw))
        code, out, _ = run_cli(capsys, "topology", "--instance", str(path))
        assert code == 1
        assert "first failing check: chain-homology" in out

    def test_report_only_without_expectations(self, capsys, tmp_path):
        raw = load_raw("topology.json")
        raw["expected"] = {}
        path = tmp_path / "bare.json"
        path.write_text(json.dumps(raw))
        code, out, _ = run_cli(capsys, "topology", "--instance", str(path))
        assert code == 0
        assert "check" not in out


class TestDefcalc:
    def test_shipped_data(self, capsys):
        code, out, _ = run_cli(capsys, "defcalc", "--format", "structured")
        assert code == 0
        doc = json.loads(out)
        degrees = {e["config"]: e["degrees"] for e in doc["configs"]}
        assert degrees == {"surface_double_curve": {"double_curve": 1},
                           "limit_core": {"core": -5},
                           "limit_arm": {"arm": 2}}

    def test_expectation_mismatch(self, capsys, tmp_path):
        raw = load_raw("defcalc.json")
        raw["configs"][0]["expected_degrees"]["double_curve"] = 7
        path = tmp_path / "wrong.json"
        path.write_text(json.dumps(raw))
        code, _, _ = run_cli(capsys, "defcalc", "--instance", str(path))
        assert code == 1


class TestInputErrors:
    def test_corrupt_instance(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"broken": tr')
        code, _, err = run_cli(capsys, "canring", "--instance", str(path))
        assert code == 2
        assert "error:" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "canring",
                               "--instance", str(tmp_path / "absent.json"))
        assert code == 2
        assert "error:" in err

    def test_bad_jobs(self, capsys):
        code, _, err = run_cli(capsys, "canring", "--jobs", "0")
        assert code == 2
        assert "--jobs" in err

    def test_bad_max_degree(self, capsys):
        code, _, err = run_cli(capsys, "canring", "--max-degree", "1")
        assert code == 2
        assert "error:" in err

    def test_unknown_command(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["frobnicate"])
        assert info.value.code == 2


def test_console_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "godeaux.cli", "defcalc"],
        capture_output=True, text=True, timeout=120)
    assert result.returncode == 0
    assert "surface_double_curve: double_curve=1" in result.stdout
