# tests/test_cli.py

import pytest
from pathlib import Path
import json
import sys

# Ensure the core modules can be imported
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core import chain, codec, corpus, spectra, utils
from core.chain import ChainMap
from core.corpus import Builtin
from core.errors import UnstableColimitError
from ui import cli
from ui.cli import EXIT_FAILURE, EXIT_INPUT, EXIT_OK, run_cli


@pytest.fixture(autouse=True)
def workspace(tmp_path, monkeypatch):
    """Runs every command inside a temporary workspace with its own run log."""
    monkeypatch.setattr(utils, 'WORKSPACE_DIR', tmp_path)
    monkeypatch.setenv("STABILIZER_REPORT_LOG", str(tmp_path / "verification_log.json"))
    for name in ("STABILIZER_PRIME", "STABILIZER_SEED", "STABILIZER_MAX_DEGREE"):
        monkeypatch.delenv(name, raising=False)
    return tmp_path


# --- Evaluation for homology and stable homotopy ---

def test_homology_of_builtin_complexes(capsys):
    """
    Assesses the documented outputs for the interval and for K over F_3.
    """
    assert run_cli(["homology", "interval"]) == EXIT_OK
    assert "H: 1, 0, 0" in capsys.readouterr().out
    assert run_cli(["--prime", "3", "homology", "K"]) == EXIT_OK
    assert "H: 0, 1, 0" in capsys.readouterr().out


def test_homology_from_a_file_with_json_out(workspace):
    (workspace / "disk.json").write_text(codec.dumps("complex", chain.disk(2, 2)), encoding="utf-8")
    assert run_cli(["--json-out", "out/disk.json", "homology", "disk.json"]) == EXIT_OK
    data = json.loads((workspace / "out" / "disk.json").read_text(encoding="utf-8"))
    assert data["homology"] == [0, 0, 0, 0], "disks are acyclic"
    assert data["degrees"] == [0, 1, 2, 3]


def test_stable_pi_of_the_sphere(workspace, capsys):
    assert run_cli(["--json-out", "pi.json", "stable-pi", "sphere", "--k-min", "-2", "--k-max", "2"]) == EXIT_OK
    rows = json.loads((workspace / "pi.json").read_text(encoding="utf-8"))["rows"]
    assert [r["value"] for r in rows] == [0, 0, 1, 0, 0]
    assert "stable pi" in capsys.readouterr().out


# --- Evaluation for input errors ---

def test_input_errors_exit_with_two(workspace, capsys):
    """
    Assesses exit code 2 for missing files, malformed JSON, bad primes and empty ranges.
    """
    assert run_cli(["homology", "missing.json"]) == EXIT_INPUT
    (workspace / "bad.json").write_text('{"p": 2, "dims": "one"}', encoding="utf-8")
    assert run_cli(["homology", "bad.json"]) == EXIT_INPUT
    assert run_cli(["--prime", "4", "homology", "S"]) == EXIT_INPUT
    assert run_cli(["stable-pi", "sphere", "--k-min", "2", "--k-max", "1"]) == EXIT_INPUT
    assert run_cli(["verify", "--suites", "not-a-suite"]) == EXIT_INPUT
    assert run_cli([]) == EXIT_INPUT
    assert "❌" in capsys.readouterr().out


def test_unstable_colimit_exits_with_one(monkeypatch, capsys):
    def unstable(x, ks):
        raise UnstableColimitError("stable homotopy colimit still changes", 4, {"k": 0})

    monkeypatch.setattr(cli, "stable_pi_table", unstable)
    assert run_cli(["stable-pi", "sphere"]) == EXIT_FAILURE
    assert "stage 4" in capsys.readouterr().out


# --- Evaluation for the spectrum commands ---

def test_check_cofib_with_oracle(workspace):
    """
    Assesses a cofibration read from a map file, cross-checked against lifting.
    """
    incl = ChainMap(chain.unit(2), chain.disk(2, 1), [[[1]]])
    (workspace / "map.json").write_text(codec.dumps("spectrum-map", spectra.free_map(0, incl)), encoding="utf-8")
    assert run_cli(["--json-out", "cofib.json", "check-cofib", "map.json", "--oracle"]) == EXIT_OK
    data = json.loads((workspace / "cofib.json").read_text(encoding="utf-8"))
    assert data == {"cofibration": True, "oracle": True}


def test_check_omega(capsys):
    assert run_cli(["check-omega", "sphere"]) == EXIT_OK
    assert "an Omega-spectrum" in capsys.readouterr().out
    assert run_cli(["check-omega", "--symmetric", "F1K"]) == EXIT_OK
    assert "not an Omega-spectrum" in capsys.readouterr().out


def test_smash_and_rectify(workspace):
    assert run_cli(["--json-out", "smash.json", "smash", "sphere", "F1S", "--levels", "2"]) == EXIT_OK
    levels = json.loads((workspace / "smash.json").read_text(encoding="utf-8"))["levels"]
    assert [entry["level"] for entry in levels] == [0, 1, 2]
    assert levels[0]["dims"] == [], "F_1 S has nothing at level 0"
    assert run_cli(["--prime", "3", "rectify", "sphere"]) == EXIT_OK


def test_compare_stabilizations_agree(capsys):
    assert run_cli(["compare-stabilizations", "S", "interval", "--k-min", "-1", "--k-max", "1"]) == EXIT_OK
    assert "disagree" not in capsys.readouterr().out


# --- Evaluation for verify ---

def test_verify_logs_the_run(workspace, capsys):
    """
    Assesses a passing verify run, its JSON report and the run log entry.
    """
    argv = ["--prime", "2", "--json-out", "report.json", "verify", "--suites", "sphere-groups",
            "--samples", "2", "--random-count", "1"]
    assert run_cli(argv) == EXIT_OK
    assert "All checks passed" in capsys.readouterr().out
    report = json.loads((workspace / "report.json").read_text(encoding="utf-8"))
    assert report["passed"] is True and report["primes"] == [2]
    log = json.loads((workspace / "verification_log.json").read_text(encoding="utf-8"))
    assert len(log) == 1 and log[0]["suites"] == ["sphere-groups"]


def test_verify_failure_prints_replay(monkeypatch, capsys):
    wrong = Builtin("sphere", "F_1 S posing as the sphere", lambda f: spectra.free_spectrum(1, chain.unit(f)))
    monkeypatch.setitem(corpus.BUILTINS, "sphere", wrong)
    assert run_cli(["--prime", "2", "verify", "--suites", "sphere-groups"]) == EXIT_FAILURE
    out = capsys.readouterr().out
    assert "❌ replay sphere-groups" in out


def test_listing_commands(capsys):
    assert run_cli(["suites"]) == EXIT_OK
    assert "cofibration-lifting" in capsys.readouterr().out
    assert run_cli(["builtins"]) == EXIT_OK
    assert "cofree-disk" in capsys.readouterr().out
