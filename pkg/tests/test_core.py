# tests/test_core.py

import pytest
from pathlib import Path
import argparse
import json
import sys

# Ensure the core modules can be imported
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core import utils
from core.command_manager import CommandManager
from core.errors import ValidationError
from core.report_logger import ReportLogger
from core.settings import Settings
from core.verification import ReportEntry, VerificationReport

# --- Evaluation for core utility functions ---

def test_file_read_write(tmp_path, monkeypatch):
    """
    Assesses the stability of file I/O operations.
    - Writes JSON to a new file in a fresh subdirectory.
    - Reads the text back to verify correctness.
    """
    monkeypatch.setattr(utils, 'WORKSPACE_DIR', tmp_path)

    data = {"p": 2, "dims": [1]}
    assert utils.write_json("results/unit.json", data) is True, "write_json should return True on success"
    assert (tmp_path / "results" / "unit.json").exists(), "parent directories are created"

    content = utils.read_text("results/unit.json")
    assert json.loads(content) == data, "The content read should match the content written."
    assert utils.read_text("results/missing.json") is None, "missing files read as None"


def test_path_safety(tmp_path, monkeypatch):
    """
    Assesses that paths escaping the workspace are refused.
    """
    monkeypatch.setattr(utils, 'WORKSPACE_DIR', tmp_path)
    with pytest.raises(PermissionError):
        utils.safe_path("../outside.json")
    assert utils.read_text("../../etc/passwd") is None, "read_text reports instead of raising"
    assert utils.write_json("../escape.json", {}) is False


# --- Evaluation for the command manager ---

def test_command_manager_dispatch():
    """
    Assesses registration, dispatch with the parsed arguments, and unknown commands.
    """
    manager = CommandManager()
    seen = []

    def handler(args):
        seen.append(args.value)
        return 0

    manager.register("record", handler, "Records a value.")
    assert manager.execute("record", argparse.Namespace(value=7)) == 0
    assert seen == [7], "the handler receives the parsed arguments"
    assert manager.describe() == [("record", "Records a value.")]
    assert manager.execute("missing", argparse.Namespace()) is None, "unknown commands return None"


# --- Evaluation for settings ---

def test_settings_defaults_and_overrides(monkeypatch):
    """
    Assesses defaults, STABILIZER_* environment overrides and flag overrides.
    """
    for name in ("STABILIZER_PRIME", "STABILIZER_SEED", "STABILIZER_MAX_DEGREE"):
        monkeypatch.delenv(name, raising=False)
    settings = Settings.load()
    assert settings.get("field", "prime") == 2
    assert settings.get("probe", "max_level") == 4
    assert settings.get("nope", "missing", "fallback") == "fallback"

    monkeypatch.setenv("STABILIZER_PRIME", "5")
    monkeypatch.setenv("STABILIZER_SEED", "42")
    settings = Settings.load()
    assert settings.get("field", "prime") == 5
    assert settings.get("generator", "seed") == 42

    settings.set("field", "prime", 3)
    assert settings.get("field", "prime") == 3, "flags win over the environment"
    settings.set("field", "prime", None)
    assert settings.get("field", "prime") == 3, "an unset flag changes nothing"


def test_settings_reject_bad_values(monkeypatch):
    monkeypatch.setenv("STABILIZER_PRIME", "6")
    with pytest.raises(ValidationError):
        Settings.load()
    monkeypatch.setenv("STABILIZER_PRIME", "two")
    with pytest.raises(ValidationError):
        Settings.load()
    monkeypatch.setenv("STABILIZER_PRIME", "4294967311")
    with pytest.raises(ValidationError, match="below"):
        Settings.load()
    monkeypatch.delenv("STABILIZER_PRIME")
    with pytest.raises(ValidationError):
        Settings({"generator": {"max_dim": -1}})


def test_settings_from_env_file(tmp_path, monkeypatch):
    # registers the variable so teardown removes what load_dotenv sets
    monkeypatch.setenv("STABILIZER_MAX_TAIL", "0")
    monkeypatch.delenv("STABILIZER_MAX_TAIL")
    env_file = tmp_path / ".env"
    env_file.write_text("STABILIZER_MAX_TAIL=1\n", encoding="utf-8")
    settings = Settings.load(env_file)
    assert settings.get("generator", "max_tail") == 1


# --- Evaluation for the verification run log ---

def _report(passed: bool) -> VerificationReport:
    entries = [ReportEntry("sphere-groups", "statement", "sphere, p=2", True),
               ReportEntry("adjunctions", "statement", "free-eval", passed, detail="" if passed else "broken")]
    return VerificationReport(7, (2,), entries)


def test_report_logger_appends_runs(tmp_path):
    """
    Assesses that each run adds one entry with counts and failing claims, and that entries persist.
    """
    log_path = tmp_path / "verification_log.json"
    logger = ReportLogger(log_path)
    assert logger.get_all_logs() == [], "a new log starts empty"
    assert log_path.exists(), "the log file is created on first use"

    logger.log_run(_report(True), ["sphere-groups", "adjunctions"])
    entry = logger.log_run(_report(False), ["adjunctions"])
    assert entry["counts"] == {"total": 2, "passed": 1, "failed": 1}
    assert entry["failing_claims"] == ["adjunctions"]
    assert entry["seed"] == 7 and entry["primes"] == [2]

    reloaded = ReportLogger(log_path)
    assert len(reloaded.get_all_logs()) == 2, "entries survive a reload"


def test_report_logger_survives_a_damaged_file(tmp_path):
    log_path = tmp_path / "verification_log.json"
    log_path.write_text("{not json", encoding="utf-8")
    logger = ReportLogger(log_path)
    assert logger.get_all_logs() == []
    assert log_path.read_text(encoding="utf-8") == "{not json", "the damaged file is left for inspection"
