"""Defaults, optional JSON config file, and the on-disk series cache."""
from __future__ import annotations

import json
import os
import re
import tempfile
from dataclasses import dataclass
from pathlib import Path

CONFIG_ENV = "QSCHWARZ_CONFIG"
CACHE_ENV = "QSCHWARZ_CACHE_DIR"
DEFAULT_CONFIG_PATH = Path("~/.config/qschwarz/config.json")
DEFAULT_CACHE_DIR = Path("~/.cache/qschwarz")


@dataclass(frozen=True)
class Settings:
    order: int = 200
    precision: int = 60
    tolerance: float = 1e-8
    cache_dir: Path = DEFAULT_CACHE_DIR


def load_settings(path: str | os.PathLike | None = None) -> Settings:
    """Read ``{"order", "precision", "tolerance", "cache_dir"}``; missing keys keep defaults.

    The cache directory environment variable wins over the file.
    """
    path = Path(path or os.environ.get(CONFIG_ENV) or DEFAULT_CONFIG_PATH).expanduser()
    data = {}
    if path.is_file():
        data = json.loads(path.read_text())
    cache = os.environ.get(CACHE_ENV) or data.get("cache_dir") or DEFAULT_CACHE_DIR
    return Settings(
        order=int(data.get("order", Settings.order)),
        precision=int(data.get("precision", Settings.precision)),
        tolerance=float(data.get("tolerance", Settings.tolerance)),
        cache_dir=Path(cache).expanduser(),
    )


class SeriesCache:
    """JSON files keyed by ``(name, order)``; writes go through a temp file and rename."""

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    def path(self, name: str, order: int) -> Path:
        safe = re.sub(r"[^A-Za-z0-9_.-]", "_", name)
        return self.directory / f"{safe}__{int(order)}.json"

    def get(self, name: str, order: int) -> dict | None:
        p = self.path(name, order)
        try:
            return json.loads(p.read_text())
        except (FileNotFoundError, json.JSONDecodeError):
            return None

    def put(self, name: str, order: int, payload: dict) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        p = self.path(name, order)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(payload, fh, separators=(",", ":"))
            os.replace(tmp, p)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return p
