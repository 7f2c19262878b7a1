"""Content-addressed cache for Groebner bases and cohomology tables.

Entries are JSON files named by the SHA-256 of their canonical key.  Loaded
payloads are never trusted blindly: Groebner bases re-run the Buchberger
criterion and cohomology tables re-run the relevant square-zero checks before
use; anything that fails verification is recomputed and overwritten.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Optional

ENV_CACHE_DIR = "LGTFT_CACHE_DIR"
DEFAULT_DIRNAME = ".lgtft-cache"


def default_cache_dir() -> Path:
    override = os.environ.get(ENV_CACHE_DIR)
    if override:
        return Path(override)
    return Path.cwd() / DEFAULT_DIRNAME


class Cache:
    """Tiny key-value JSON store; disabled entirely when enabled=False."""

    def __init__(self, directory: Optional[Path] = None, enabled: bool = True):
        self.directory = Path(directory) if directory else default_cache_dir()
        self.enabled = enabled

    def _path(self, kind: str, key) -> Path:
        digest = hashlib.sha256(
            json.dumps([kind, key], sort_keys=True).encode("utf-8")
        ).hexdigest()
        return self.directory / f"{kind}-{digest}.json"

    def get(self, kind: str, key):
        if not self.enabled:
            return None
        path = self._path(kind, key)
        try:
            with open(path, "r", encoding="utf-8") as handle:
                record = json.load(handle)
        except (OSError, ValueError):
            return None
        if record.get("kind") != kind:
            return None
        return record.get("payload")

    def put(self, kind: str, key, payload):
        if not self.enabled:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(kind, key)
        record = {"kind": kind, "key": key, "payload": payload}
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as handle:
            json.dump(record, handle, sort_keys=True)
        os.replace(tmp, path)

    def clear(self) -> int:
        if not self.directory.is_dir():
            return 0
        removed = 0
        for path in self.directory.glob("*.json"):
            path.unlink()
            removed += 1
        return removed


def null_cache() -> Cache:
    return Cache(enabled=False)
