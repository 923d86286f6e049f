"""Versioned binary cache of enumerated order complexes.

File layout (little-endian)::

    magic     8 bytes   b"SIGNVAR\\0"
    version   u16
    n, m      u8, u8
    elements  u32       size of P_{n,m}, re-checked on load
    length    u64       payload byte count
    digest    32 bytes  sha256 of the payload
    payload   zlib(for k = 1..: u64 count, then count*k u32 element IDs)
"""

from __future__ import annotations

import hashlib
import logging
import os
import struct
import zlib
from pathlib import Path

import numpy as np

from .ordercomplex import DEFAULT_FACE_CAP, OrderComplex, build_complex
from .poset import build_pnm

log = logging.getLogger(__name__)

MAGIC = b"SIGNVAR\0"
FORMAT_VERSION = 1
ENV_VAR = "SIGNVAR_CACHE_DIR"
_HEADER = struct.Struct("<8sHBBIQ32s")


class CacheCorrupt(RuntimeError):
    pass


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "signvar"


def cache_path(cache_dir: Path, n: int, m: int) -> Path:
    return Path(cache_dir) / f"complex-n{n}-m{m}-v{FORMAT_VERSION}.bin"


def encode(K: OrderComplex) -> bytes:
    parts = []
    for k, layer in enumerate(K.faces):
        if k == 0:
            continue
        parts.append(struct.pack("<Q", len(layer)))
        parts.append(np.asarray(layer, dtype="<u4").reshape(-1).tobytes())
    payload = zlib.compress(b"".join(parts), 6)
    header = _HEADER.pack(
        MAGIC, FORMAT_VERSION, K.n, K.m, len(K.poset), len(payload), hashlib.sha256(payload).digest()
    )
    return header + payload


def decode(data: bytes, n: int, m: int) -> OrderComplex:
    if len(data) < _HEADER.size:
        raise CacheCorrupt("truncated header")
    magic, version, fn, fm, count, length, digest = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise CacheCorrupt("bad magic")
    if version != FORMAT_VERSION:
        raise CacheCorrupt(f"format version {version}, expected {FORMAT_VERSION}")
    if (fn, fm) != (n, m):
        raise CacheCorrupt(f"file holds (n, m) = ({fn}, {fm}), expected ({n}, {m})")
    payload = data[_HEADER.size:]
    if len(payload) != length or hashlib.sha256(payload).digest() != digest:
        raise CacheCorrupt("payload checksum mismatch")
    poset = build_pnm(n, m)
    if len(poset) != count:
        raise CacheCorrupt("element count does not match the rebuilt poset")
    faces: list[list[tuple[int, ...]]] = [[()]]
    try:
        raw = zlib.decompress(payload)
        pos, k = 0, 1
        while pos < len(raw):
            (num,) = struct.unpack_from("<Q", raw, pos)
            pos += 8
            arr = np.frombuffer(raw, dtype="<u4", count=num * k, offset=pos).reshape(num, k)
            pos += 4 * num * k
            if arr.size and int(arr.max()) >= count:
                raise CacheCorrupt("element ID out of range")
            faces.append([tuple(int(x) for x in row) for row in arr])
            k += 1
    except (zlib.error, struct.error, ValueError) as exc:
        raise CacheCorrupt(f"undecodable payload: {exc}") from exc
    return OrderComplex(poset, faces)


def save(K: OrderComplex, cache_dir: Path) -> Path:
    path = cache_path(cache_dir, K.n, K.m)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_bytes(encode(K))
    tmp.replace(path)
    return path


def load(n: int, m: int, cache_dir: Path) -> OrderComplex | None:
    """Cached complex, None when absent; raises :class:`CacheCorrupt` on a bad file."""
    path = cache_path(cache_dir, n, m)
    if not path.exists():
        return None
    return decode(path.read_bytes(), n, m)


def get_complex(n: int, m: int, cache_dir: Path | None, cap: int = DEFAULT_FACE_CAP) -> OrderComplex:
    """Load from cache when valid, otherwise build (and store when caching is on)."""
    if cache_dir is None:
        return build_complex(n, m, cap)
    try:
        K = load(n, m, cache_dir)
    except CacheCorrupt as exc:
        log.warning("discarding cache file %s: %s", cache_path(cache_dir, n, m), exc)
        K = None
    if K is not None:
        return K
    K = build_complex(n, m, cap)
    save(K, cache_dir)
    return K
