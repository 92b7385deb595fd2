# core/report_logger.py

"""
Keeps a history of verification runs.

Each run appends one entry (timestamp, seed, primes, suite filter, counts and
failing claims) to data/verification_log.json.
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
from datetime import datetime
import logging

from core.verification import VerificationReport

logger = logging.getLogger(__name__)


class ReportLogger:
    """
    Manages the log of verification runs.
    """

    def __init__(self, file_path: Optional[Path] = None):
        """
        Args:
            file_path: Optional path to the log JSON file.
                       If None, uses data/verification_log.json in the project.
        """
        if file_path is None:
            base_dir = Path(__file__).resolve().parent.parent
            self.file_path: Path = base_dir / "data" / "verification_log.json"
        else:
            self.file_path: Path = Path(file_path)

        self.log_entries: List[Dict[str, Any]] = []
        self._load_log()

    def _ensure_file_exists(self) -> None:
        try:
            self.file_path.parent.mkdir(parents=True, exist_ok=True)
            if not self.file_path.exists():
                logger.info(f"Verification log not found at {self.file_path}. Initializing with an empty log.")
                self._save_log()
        except IOError as e:
            logger.error(f"Error ensuring verification log exists at {self.file_path}: {e}")

    def _load_log(self) -> None:
        """Loads log entries from the JSON file."""
        self._ensure_file_exists()
        if not self.file_path.exists():
            logger.warning(f"Log file {self.file_path} still does not exist. Using in-memory empty log.")
            self.log_entries = []
            return

        try:
            with open(self.file_path, 'r', encoding='utf-8') as f:
                content = f.read()
                if not content.strip():
                    self.log_entries = []
                else:
                    loaded = json.loads(content)
                    self.log_entries = loaded if isinstance(loaded, list) else []
        except json.JSONDecodeError:
            # not saved here, so a damaged file stays on disk for inspection
            logger.error(f"Error decoding JSON from {self.file_path}. Treating as empty log.")
            self.log_entries = []
        except IOError as e:
            logger.error(f"Could not read verification log {self.file_path}: {e}. Using empty log.")
            self.log_entries = []

    def _save_log(self) -> None:
        try:
            self.file_path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.file_path, 'w', encoding='utf-8') as f:
                json.dump(self.log_entries, f, indent=4)
        except IOError as e:
            logger.error(f"Could not write verification log {self.file_path}: {e}")

    def log_run(self, report: VerificationReport, suites: Sequence[str]) -> Dict[str, Any]:
        entry = {
            "timestamp": datetime.now().isoformat(),
            "seed": report.seed,
            "primes": list(report.primes),
            "suites": list(suites),
            "counts": report.counts(),
            "failing_claims": sorted({e.claim for e in report.failures}),
        }
        self.log_entries.append(entry)
        self._save_log()
        logger.info(f"Logged verification run: {entry['counts']}")
        return entry

    def get_all_logs(self) -> List[Dict[str, Any]]:
        """Returns a copy of all log entries."""
        return self.log_entries.copy()
