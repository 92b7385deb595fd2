# main.py
import os
os.environ['PYTHONUTF8'] = '1' # Force Python to use UTF-8 mode

import sys

from ui.cli import run_cli
from core.logger_setup import setup_logger
from core.settings import Settings
from core.errors import StabilizerError


def main():
    """
    Main entrypoint for Stabilizer.
    Initializes logging and runs one command-line subcommand.
    """
    try:
        level = Settings.load().get("logging", "level", "INFO")
    except StabilizerError:
        level = "INFO"
    setup_logger(level)
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
