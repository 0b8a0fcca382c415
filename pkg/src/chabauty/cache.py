"""Content-addressed on-disk cache for expensive intermediate results.

Entries are JSON files named by the SHA-256 of the canonical request.  Each
file stores the payload together with a digest of its canonical form; a
mismatch on read counts as corruption, triggers recomputation and records a
warning.  With no cache directory configured every lookup just computes.
"""

import hashlib
import json
import os
import tempfile

from .errors import CacheCorrupt

ENV_DIR = "CHABAUTY_CACHE_DIR"

_state = {"dir": None, "warnings": [], "hits": 0, "misses": 0}


def canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj):
    return hashlib.sha256(canonical(obj).encode()).hexdigest()


def configure(directory=None, from_env=True):
    """Select the cache directory; None disables the cache."""
    if directory is None and from_env:
        directory = os.environ.get(ENV_DIR) or None
    _state["dir"] = directory
    _state["warnings"] = []
    _state["hits"] = 0
    _state["misses"] = 0


def directory():
    return _state["dir"]


def warnings():
    return list(_state["warnings"])


def stats():
    return {"hits": _state["hits"], "misses": _state["misses"]}


def _path(key):
    return os.path.join(_state["dir"], key[:2], key + ".json")


def _read(path, key):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            entry = json.load(fh)
        except ValueError as exc:
            raise CacheCorrupt("unreadable cache entry %s" % key) from exc
    if not isinstance(entry, dict) or entry.get("key") != key or "payload" not in entry:
        raise CacheCorrupt("malformed cache entry %s" % key)
    if entry.get("digest") != digest(entry["payload"]):
        raise CacheCorrupt("digest mismatch in cache entry %s" % key)
    return entry["payload"]


def _write(path, key, payload):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    entry = {"key": key, "payload": payload, "digest": digest(payload)}
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(canonical(entry))
    os.replace(tmp, path)


def lookup_or_compute(kind, request, producer):
    """Return the cached payload for (kind, request) or compute and store it."""
    if not _state["dir"]:
        return producer()
    key = digest({"kind": kind, "request": request})
    path = _path(key)
    if os.path.exists(path):
        try:
            payload = _read(path, key)
            _state["hits"] += 1
            return payload
        except CacheCorrupt as exc:
            _state["warnings"].append("cache entry recomputed: %s" % exc)
    _state["misses"] += 1
    payload = producer()
    _write(path, key, payload)
    return payload


def cache_lookup_or_compute(key, producer):
    """Generic form keyed by an arbitrary JSON-serialisable request."""
    return lookup_or_compute("generic", key, producer)
