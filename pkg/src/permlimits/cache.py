"""Persistent count cache: one JSON object per line.

Records look like ``{"pattern": "1,3,4,2", "n": 7, "count": "2740",
"engine_version": "1"}``. Counts are decimal strings so no consumer ever
sees them as floats. Unreadable lines are skipped with a warning.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import asdict, dataclass
from pathlib import Path

log = logging.getLogger(__name__)

ENGINE_VERSION = "1"


@dataclass(frozen=True)
class CacheRecord:
    pattern: str
    n: int
    count: str
    engine_version: str = ENGINE_VERSION


class MemoryCache:
    """In-process cache with the same interface as CountCache."""

    def __init__(self):
        self._data: dict[tuple[str, int], int] = {}
        self._lock = threading.Lock()

    def get(self, pattern: str, n: int) -> int | None:
        return self._data.get((pattern, n))

    def put(self, pattern: str, n: int, count: int) -> None:
        with self._lock:
            self._data[(pattern, n)] = count

    def __len__(self) -> int:
        return len(self._data)


class CountCache(MemoryCache):
    """Line-delimited JSON cache with append-only write-through."""

    def __init__(self, path):
        super().__init__()
        self.path = Path(path)
        self.skipped = 0
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        with self.path.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    rec = CacheRecord(**json.loads(line))
                    if rec.engine_version != ENGINE_VERSION:
                        continue
                    count = int(rec.count)
                    n = int(rec.n)
                except (ValueError, TypeError) as exc:
                    self.skipped += 1
                    log.warning("%s:%d: skipping corrupt cache line (%s)", self.path, lineno, exc)
                    continue
                self._data[(rec.pattern, n)] = count

    def put(self, pattern: str, n: int, count: int) -> None:
        with self._lock:
            if self._data.get((pattern, n)) == count:
                return
            self._data[(pattern, n)] = count
            rec = CacheRecord(pattern, n, str(count))
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(asdict(rec), sort_keys=True) + "\n")
