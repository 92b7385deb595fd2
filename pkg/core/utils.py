# core/utils.py
import json
import logging
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)

# Define a base directory for safety. All file operations will be contained here.
WORKSPACE_DIR = Path.cwd()


def safe_path(filepath: str | Path, workspace: Path | None = None) -> Path:
    """
    Resolves a given filepath to an absolute path, ensuring it's within the workspace.
    Prevents directory traversal (e.g., '../../etc/passwd').
    """
    base = (workspace or WORKSPACE_DIR).resolve()
    resolved_path = base.joinpath(filepath).resolve()

    if base not in resolved_path.parents and resolved_path != base:
        raise PermissionError(f"Attempted file access outside of the workspace: {filepath}")

    return resolved_path


def read_text(filepath: str | Path, workspace: Path | None = None) -> str | None:
    """Reads the content of a file safely."""
    try:
        path = safe_path(filepath, workspace)
        if path.exists() and path.is_file():
            return path.read_text(encoding='utf-8')
        print(f"❌ File not found or is not a file: {filepath}")
        return None
    except (OSError, PermissionError) as e:
        print(f"❌ Error reading file {filepath}: {e}")
        return None


def write_json(filepath: str | Path, data: Any, workspace: Path | None = None) -> bool:
    """Writes data as indented JSON, creating parent directories."""
    try:
        path = safe_path(filepath, workspace)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(data, indent=2), encoding='utf-8')
        logger.info("wrote %s", path)
        return True
    except (OSError, PermissionError, TypeError) as e:
        print(f"❌ Error writing to file {filepath}: {e}")
        return False
