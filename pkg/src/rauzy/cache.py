"""On-disk cache location and JSON helpers.  The cache is advisory: deleting it is always safe."""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

ENV_VAR = "RAUZY_CACHE_DIR"


def cache_dir() -> Path:
    """``$RAUZY_CACHE_DIR``, else ``$XDG_CACHE_HOME/rauzy``, else ``~/.cache/rauzy``."""
    explicit = os.environ.get(ENV_VAR)
    if explicit:
        return Path(explicit)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "rauzy"


def read_json(name: str):
    path = cache_dir() / name
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError):
        return None


def write_json(name: str, data) -> None:
    """Atomic write; failures are swallowed because the cache is optional."""
    root = cache_dir()
    try:
        root.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=root, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(data, fh, sort_keys=True, indent=1)
        os.replace(tmp, root / name)
    except OSError:
        pass
