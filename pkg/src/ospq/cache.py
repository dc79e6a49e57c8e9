"""Write-once on-disk cache for expensive constructions.

Entries live under ``$OSPQ_CACHE_DIR`` (or a directory set with
:func:`set_cache_dir`).  Nothing is cached when neither is configured.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any

SCHEMA_VERSION = 1
log = logging.getLogger(__name__)

_dir: Path | None = None
_dir_set = False


def set_cache_dir(path: str | os.PathLike | None) -> None:
    global _dir, _dir_set
    _dir = Path(path) if path else None
    _dir_set = True


def cache_dir() -> Path | None:
    if _dir_set:
        return _dir
    env = os.environ.get("OSPQ_CACHE_DIR")
    return Path(env) if env else None


def cache_key(n: int, kind: str, params: Any) -> str:
    raw = json.dumps([SCHEMA_VERSION, n, kind, params], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(raw.encode()).hexdigest()


def cache_get(key: str, directory: Path | None = None) -> bytes | None:
    directory = directory or cache_dir()
    if directory is None:
        return None
    path = directory / f"{key}.json"
    try:
        data = path.read_bytes()
    except FileNotFoundError:
        return None
    try:
        doc = json.loads(data)
        if doc.get("schema") != SCHEMA_VERSION:
            return None
    except (ValueError, AttributeError):
        log.warning("ignoring corrupt cache entry %s", path)
        return None
    return data


def cache_put(key: str, payload: bytes, directory: Path | None = None) -> bool:
    """Atomically store ``payload``; returns False if the key already exists."""
    directory = directory or cache_dir()
    if directory is None:
        return False
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{key}.json"
    if path.exists():
        return False
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        try:
            os.link(tmp, path)  # fails if another writer won the race
        except FileExistsError:
            return False
        return True
    finally:
        os.unlink(tmp)


def _payload(kind: str, body: Any) -> bytes:
    return json.dumps({"schema": SCHEMA_VERSION, "kind": kind, "body": body}, sort_keys=True).encode()


def load_irreducible(n: int, lam):
    from .repcore import Module
    from .uqalg import Gen

    key = cache_key(n, "irreducible", [str(x) for x in lam])
    raw = cache_get(key)
    if raw is None:
        return None
    try:
        body = json.loads(raw)["body"]
        mod = Module.from_json(body["module"])
        mod.name = body["module"].get("name", "")
        words = [tuple(Gen(k, i, p) for k, i, p in w) for w in body["words"]]
    except (KeyError, ValueError, TypeError) as exc:
        log.warning("ignoring unreadable cache entry for W(%s): %s", lam, exc)
        return None
    return mod, words


def store_irreducible(n: int, lam, module, words) -> None:
    if cache_dir() is None:
        return
    doc = module.to_json()
    doc["name"] = module.name
    body = {"module": doc, "words": [[[g.kind, g.index, g.power] for g in w] for w in words]}
    cache_put(cache_key(n, "irreducible", [str(x) for x in lam]), _payload("irreducible", body))
