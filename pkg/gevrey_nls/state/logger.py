"""
Run history and logging setup for gevrey-nls.

The history keeps the last 100 experiment runs in a circular buffer stored
as JSON under the data directory.
"""

from __future__ import annotations

import json
import logging
from collections import deque
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

import coloredlogs

from gevrey_nls.system_info import ensure_data_dir, get_history_path

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


def setup_logging(level: str = "INFO") -> None:
    """Install coloured console logging for the package."""
    coloredlogs.install(
        level=level.upper(),
        logger=logging.getLogger("gevrey_nls"),
        fmt=LOG_FORMAT,
    )


class RunLogger:
    """Logs experiment runs with a circular buffer (max 100 entries)."""

    def __init__(self, log_path: Optional[Path | str] = None, max_entries: int = 100):
        self.max_entries = max_entries
        self.log_path = Path(log_path) if log_path else get_history_path()
        if log_path is None:
            ensure_data_dir()
        else:
            self.log_path.parent.mkdir(parents=True, exist_ok=True)
        self.history = self._load_history()

    def _load_history(self) -> deque:
        if self.log_path.exists():
            try:
                data = json.loads(self.log_path.read_text(encoding="utf-8"))
                return deque(data, maxlen=self.max_entries)
            except (OSError, json.JSONDecodeError) as exc:
                logger.warning("Could not load run history %s: %s", self.log_path, exc)
        return deque(maxlen=self.max_entries)

    def _save_history(self) -> None:
        try:
            self.log_path.write_text(
                json.dumps(list(self.history), indent=2, ensure_ascii=False), encoding="utf-8"
            )
        except OSError as exc:
            logger.warning("Could not save run history %s: %s", self.log_path, exc)

    def log_run(
        self,
        experiment: str,
        config_text: str,
        outputs: List[str],
        status: str = "ok",
        metadata: Optional[Dict[str, Any]] = None,
    ) -> Dict[str, Any]:
        """
        Record one run.

        Args:
            experiment: Experiment name.
            config_text: Canonical config the run used.
            outputs: Files the run wrote.
            status: "ok" or "error".
            metadata: Row counts, fitted exponents and similar.
        """
        entry = {
            "timestamp": datetime.now().isoformat(),
            "experiment": experiment,
            "status": status,
            "config": config_text,
            "outputs": list(outputs),
            "metadata": metadata or {},
        }
        self.history.append(entry)
        self._save_history()
        return entry

    def get_history(
        self, limit: Optional[int] = None, experiment: Optional[str] = None
    ) -> List[Dict[str, Any]]:
        """Most recent first, optionally filtered by experiment."""
        entries = list(reversed(self.history))
        if experiment:
            entries = [entry for entry in entries if entry.get("experiment") == experiment]
        if limit:
            entries = entries[:limit]
        return entries

    def clear_history(self) -> None:
        self.history.clear()
        self._save_history()

    def get_stats(self) -> Dict[str, Any]:
        counts: Dict[str, int] = {}
        for entry in self.history:
            name = entry.get("experiment", "unknown")
            counts[name] = counts.get(name, 0) + 1
        return {
            "total_runs": len(self.history),
            "max_entries": self.max_entries,
            "experiments": counts,
            "oldest_entry": self.history[0].get("timestamp") if self.history else None,
            "newest_entry": self.history[-1].get("timestamp") if self.history else None,
        }


def format_history_entry(entry: Dict[str, Any], index: int) -> str:
    timestamp = datetime.fromisoformat(entry["timestamp"]).strftime("%Y-%m-%d %H:%M:%S")
    outputs = ", ".join(entry.get("outputs", [])) or "-"
    lines = [
        f"\n{index}. [{timestamp}] {entry.get('experiment', 'unknown').upper()} ({entry.get('status', '?')})",
        f"   Outputs: {outputs}",
    ]
    for key, value in entry.get("metadata", {}).items():
        lines.append(f"   {key}: {value}")
    lines.append("-" * 80)
    return "\n".join(lines)


def format_history_list(entries: List[Dict[str, Any]], title: str = "Run History") -> str:
    if not entries:
        return "No runs recorded."
    output = [f"\n📜 {title} ({len(entries)} entries)\n", "=" * 80]
    for i, entry in enumerate(entries, 1):
        output.append(format_history_entry(entry, i))
    return "\n".join(output)


_run_logger: Optional[RunLogger] = None


def get_run_logger() -> RunLogger:
    """Get or create the global run logger."""
    global _run_logger
    if _run_logger is None:
        _run_logger = RunLogger()
    return _run_logger


def reset_run_logger() -> None:
    """Forget the global instance (the data directory may have moved)."""
    global _run_logger
    _run_logger = None


__all__ = [
    "RunLogger",
    "setup_logging",
    "get_run_logger",
    "reset_run_logger",
    "format_history_entry",
    "format_history_list",
]
