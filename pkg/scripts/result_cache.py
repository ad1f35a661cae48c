"""
Result Cache

Content-addressed store for CLI results. A key is the sha256 of the
canonical JSON of (module, operation, params); the value is the list of
output lines, stored as ``<dir>/<key[:2]>/<key>.json``. Writes land in a
temp file in the target directory and are published with os.replace, so a
reader never sees a partial entry.
"""

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)


def canonical_json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def cache_key(module: str, operation: str, params: Dict[str, Any]) -> str:
    payload = canonical_json({"module": module, "operation": operation, "params": params})
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class ResultCache:
    """Stores output lines by cache key; disabled caches never hit and never write."""

    def __init__(self, directory: Path, enabled: bool = True):
        self.directory = Path(directory)
        self.enabled = enabled
        self.logger = logging.getLogger(__name__)

    def _path(self, key: str) -> Path:
        return self.directory / key[:2] / f"{key}.json"

    def get(self, module: str, operation: str, params: Dict[str, Any]) -> Optional[List[str]]:
        if not self.enabled:
            return None
        path = self._path(cache_key(module, operation, params))
        if not path.exists():
            return None
        try:
            with open(path, "r", encoding="utf-8") as f:
                entry = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            self.logger.warning(f"Ignoring unreadable cache entry {path}: {e}")
            return None
        lines = entry.get("lines") if isinstance(entry, dict) else None
        if not isinstance(lines, list):
            self.logger.warning(f"Ignoring malformed cache entry {path}")
            return None
        self.logger.debug(f"Cache hit for {module}.{operation}")
        return lines

    def put(self, module: str, operation: str, params: Dict[str, Any], lines: List[str]) -> Optional[Path]:
        if not self.enabled:
            return None
        key = cache_key(module, operation, params)
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        entry = {"module": module, "operation": operation, "params": params, "lines": lines}
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{key}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(canonical_json(entry))
            os.replace(tmp, path)
        except OSError:
            if os.path.exists(tmp):
                os.remove(tmp)
            raise
        self.logger.debug(f"Cached {module}.{operation} under {key[:12]}")
        return path
