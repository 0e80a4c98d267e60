"""On-disk cache for expensive censuses.

One JSON-lines file per cache root; each line is
``{"key_hash", "checksum", "payload"}``. The last line for a key wins. A
checksum mismatch marks the entry corrupt and the caller recomputes. Writes
are appended under an advisory lock file, so there is a single writer at a
time. IO errors propagate.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from filelock import FileLock

ENV_VAR = "HEIGHTZETA_CACHE_DIR"
_FILE = "cache.jsonl"


def _canonical(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def key_hash(key: str) -> str:
    return hashlib.sha256(key.encode()).hexdigest()


def checksum(payload) -> str:
    return hashlib.sha256(_canonical(payload).encode()).hexdigest()


class Cache:
    def __init__(self, root: str | os.PathLike | None = None):
        if root is None:
            root = os.environ.get(ENV_VAR)
        if root is None:
            raise ValueError(f"no cache directory: pass one or set {ENV_VAR}")
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.path = self.root / _FILE
        self.lock = FileLock(str(self.root / (_FILE + ".lock")))
        self.hits = 0
        self.misses = 0
        self.corrupt = 0
        self.last_status: str | None = None

    @classmethod
    def from_env(cls) -> "Cache | None":
        root = os.environ.get(ENV_VAR)
        return cls(root) if root else None

    def _records(self):
        if not self.path.exists():
            return
        with self.path.open() as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    yield json.loads(line)
                except json.JSONDecodeError:
                    yield {"key_hash": None, "broken": line}

    def load(self, key: str):
        """Payload stored under key, or None on a miss or a corrupt entry."""
        h = key_hash(key)
        found = None
        with self.lock:
            for rec in self._records():
                if rec.get("key_hash") == h:
                    found = rec
        if found is None:
            self.misses += 1
            self.last_status = "miss"
            return None
        if "payload" not in found or checksum(found["payload"]) != found.get("checksum"):
            self.corrupt += 1
            self.last_status = "corrupt"
            return None
        self.hits += 1
        self.last_status = "hit"
        return found["payload"]

    def store(self, key: str, payload) -> None:
        rec = {"key_hash": key_hash(key), "checksum": checksum(payload), "payload": payload}
        with self.lock:
            with self.path.open("a") as fh:
                fh.write(_canonical(rec) + "\n")

    def get_or_compute(self, key: str, compute):
        hit = self.load(key)
        if hit is not None:
            return hit
        payload = compute()
        self.store(key, payload)
        return payload
