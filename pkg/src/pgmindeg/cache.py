"""Persistent result cache for corpus scans.

One JSON file per group id. Each file stores the presentation fingerprint
and a checksum of its payload; a fingerprint mismatch is a miss, and a file
that fails to parse or verify is discarded and rebuilt on the next store.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import re
import tempfile
from pathlib import Path

log = logging.getLogger(__name__)

_SAFE = re.compile(r"[^A-Za-z0-9_.-]")


def _checksum(fingerprint: str, value) -> str:
    blob = json.dumps([fingerprint, value], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class ResultCache:
    def __init__(self, root, namespace: str = ""):
        self.root = Path(root)
        if namespace:
            self.root = self.root / _SAFE.sub("_", namespace)
        self.root.mkdir(parents=True, exist_ok=True)
        self.corrupt = 0

    def _path(self, key: str) -> Path:
        return self.root / (_SAFE.sub("_", key) + ".json")

    def lookup(self, key: str, fingerprint: str):
        """Stored value for ``key``, or None on a miss or a stale entry."""
        path = self._path(key)
        try:
            raw = path.read_text()
        except FileNotFoundError:
            return None
        try:
            rec = json.loads(raw)
            ok = rec["checksum"] == _checksum(rec["fingerprint"], rec["value"])
        except (ValueError, KeyError, TypeError):
            ok = False
        if not ok:
            log.warning("discarding corrupt cache entry %s", path)
            self.corrupt += 1
            path.unlink(missing_ok=True)
            return None
        if rec["fingerprint"] != fingerprint:
            return None
        return rec["value"]

    def store(self, key: str, fingerprint: str, value) -> None:
        rec = {"key": key, "fingerprint": fingerprint, "value": value,
               "checksum": _checksum(fingerprint, value)}
        path = self._path(key)
        # write-then-rename keeps every visible file complete
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(rec, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    def keys(self):
        return sorted(p.stem for p in self.root.glob("*.json"))

    def clear(self) -> None:
        for p in self.root.glob("*.json"):
            p.unlink()
