"""
Host detection and data-directory paths for gevrey-nls.
"""

import os
import platform
from importlib import metadata
from pathlib import Path
from typing import Dict, Tuple

_LIBRARIES = ("numpy", "scipy", "pydantic", "typer", "PyYAML", "rich", "coloredlogs")


def detect_system() -> Tuple[str, str]:
    """
    Detect the operating system and architecture.

    Returns:
        Tuple of (os_name, architecture), e.g. ("Linux", "x86_64").
    """
    system = platform.system()
    machine = platform.machine().lower()

    if system == "Darwin":
        os_name = "macOS"
    elif system in ("Windows", "Linux"):
        os_name = system
    else:
        os_name = system or "Unknown"

    if machine in ("arm64", "aarch64"):
        arch = "ARM64"
    elif machine in ("x86_64", "amd64"):
        arch = "x86_64"
    else:
        arch = machine.upper() or "Unknown"

    return os_name, arch


def get_system_display_name() -> str:
    os_name, arch = detect_system()
    if os_name == "macOS" and arch == "ARM64":
        return "macOS Silicon"
    return f"{os_name} ({arch})"


def get_data_dir() -> Path:
    """
    Directory holding the run history.

    ``GEVREY_NLS_HOME`` overrides the default ``~/.gevrey_nls``.
    """
    override = os.getenv("GEVREY_NLS_HOME")
    return Path(override).expanduser() if override else Path.home() / ".gevrey_nls"


def get_history_path() -> Path:
    return get_data_dir() / "run_history.json"


def ensure_data_dir() -> Path:
    data_dir = get_data_dir()
    data_dir.mkdir(parents=True, exist_ok=True)
    return data_dir


def library_versions() -> Dict[str, str]:
    """Installed versions of the numerical and CLI stack."""
    versions: Dict[str, str] = {}
    for name in _LIBRARIES:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = "not installed"
    return versions


def get_system_info() -> Dict[str, str]:
    os_name, arch = detect_system()
    return {
        "os": os_name,
        "architecture": arch,
        "display_name": get_system_display_name(),
        "python_version": platform.python_version(),
        "cpu_count": str(os.cpu_count() or 1),
        "data_dir": str(get_data_dir()),
    }
