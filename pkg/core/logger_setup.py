# core/logger_setup.py
import logging
from pathlib import Path


def setup_logger(level: str = "INFO", log_file: Path | None = None):
    """Configures the root logger to save detailed logs to a file."""
    if log_file is None:
        log_dir = Path(__file__).parent.parent / "data"
        log_dir.mkdir(exist_ok=True)
        log_file = log_dir / "stabilizer_debug.log"

    # 'w' mode will overwrite the log each time, 'a' mode would append.
    handler = logging.FileHandler(log_file, mode='w')

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    handler.setFormatter(formatter)

    numeric = getattr(logging, str(level).upper(), logging.INFO)
    logging.basicConfig(level=numeric, handlers=[handler], force=True)

    print(f"📝 Logging configured. Debug output will be saved to {log_file}")
