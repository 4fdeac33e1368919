"""Per-user directories for logs and configuration."""

import os
import sys
from pathlib import Path

APP_DIR_NAME = "PhinWorkbench"


def is_windows() -> bool:
    """Check if running on Windows."""
    return sys.platform == "win32"


def is_macos() -> bool:
    """Check if running on macOS."""
    return sys.platform == "darwin"


def user_dir(kind: str) -> Path:
    """Get the platform-appropriate directory for ``kind``.

    ``PHINMOD_HOME`` overrides the platform default, which keeps test runs
    and CI sandboxes out of the real home directory.

    Args:
        kind: Either ``"config"`` or ``"logs"``

    Returns:
        Path to an existing directory
    """
    override = os.environ.get("PHINMOD_HOME")
    if override:
        base = Path(override)
    elif is_windows():
        base = Path(os.environ.get("APPDATA", Path.home())) / APP_DIR_NAME
    elif is_macos():
        if kind == "logs":
            base = Path.home() / "Library" / "Logs" / APP_DIR_NAME
        else:
            base = Path.home() / "Library" / "Application Support" / APP_DIR_NAME
    else:
        root = ".local/share" if kind == "logs" else ".config"
        base = Path.home() / root / APP_DIR_NAME

    path = base / kind if (override or is_windows()) else base
    path.mkdir(parents=True, exist_ok=True)
    return path
