"""
Binary on-disk caches for the expensive per-rank tables.

One file holds one payload: either the complete base-change table of a rank
(kind ``kl_table``) or the full structure-constant family (kind
``h_tensor``).  The format is deliberately rigid so that reloads are
bit-exact and damage is detected rather than propagated:

* fixed magic and an explicit format version (mismatch refuses the load),
* the rank and payload kind in the header,
* length-prefixed records, each carrying its key permutations in one-line
  form followed by (exponent, coefficient) pairs,
* a trailing SHA-256 checksum over everything before it.

Writes go to a temporary sibling and are published with an atomic rename,
so concurrent readers never observe a torn file.  Records are emitted in a
canonical order, making repeated saves of equal tables byte-identical.
"""

from __future__ import annotations

import hashlib
import os
import struct
import tempfile
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .hecke import KLTable
from .kernels import h_offset, kl_offset
from .kernels.group import GroupTable

__all__ = [
    "CacheError",
    "CACHE_VERSION",
    "cache_path",
    "load_h_tensor",
    "load_kl_table",
    "load_or_build_kl",
    "save_h_tensor",
    "save_kl_table",
]

MAGIC = b"CELLKIT\x00"
CACHE_VERSION = 1
_KINDS = {"kl_table": 1, "h_tensor": 2}
_KIND_NAMES = {v: k for k, v in _KINDS.items()}
_HEADER = struct.Struct("<8sHBBQ")  # magic, version, kind, rank, record count
_DIGEST_SIZE = hashlib.sha256().digest_size


class CacheError(Exception):
    """A cache file is damaged, truncated, or from another format version."""


def cache_path(cache_dir: str | os.PathLike, kind: str, n: int) -> Path:
    if kind not in _KINDS:
        raise ValueError(f"unknown cache kind {kind!r}")
    return Path(cache_dir) / f"{kind}_n{n}.cache"


def _pack_records(
    n: int, records: Iterable[tuple[tuple[tuple[int, ...], ...], list[tuple[int, int]]]]
) -> tuple[bytes, int]:
    chunks = []
    count = 0
    for perms, pairs in records:
        body = bytearray()
        for images in perms:
            body += bytes(images)
        body += struct.pack("<I", len(pairs))
        for exp, coeff in pairs:
            body += struct.pack("<iq", exp, coeff)
        chunks.append(struct.pack("<I", len(body)) + bytes(body))
        count += 1
    return b"".join(chunks), count


def _atomic_write(path: Path, blob: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(blob)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _write_cache(path: Path, kind: str, n: int, records) -> None:
    body, count = _pack_records(n, records)
    head = _HEADER.pack(MAGIC, CACHE_VERSION, _KINDS[kind], n, count)
    payload = head + body
    _atomic_write(path, payload + hashlib.sha256(payload).digest())


def _read_cache(path: Path, kind: str, n: int):
    blob = path.read_bytes()
    if len(blob) < _HEADER.size + _DIGEST_SIZE:
        raise CacheError(f"{path}: truncated")
    payload, digest = blob[:-_DIGEST_SIZE], blob[-_DIGEST_SIZE:]
    if hashlib.sha256(payload).digest() != digest:
        raise CacheError(f"{path}: checksum mismatch")
    magic, version, kind_id, rank, count = _HEADER.unpack_from(payload)
    if magic != MAGIC:
        raise CacheError(f"{path}: not a cellkit cache")
    if version != CACHE_VERSION:
        raise CacheError(
            f"{path}: format version {version} (this build reads {CACHE_VERSION})"
        )
    if _KIND_NAMES.get(kind_id) != kind or rank != n:
        raise CacheError(f"{path}: holds {_KIND_NAMES.get(kind_id)} for rank {rank}")
    n_perms = {"kl_table": 2, "h_tensor": 3}[kind]
    pos = _HEADER.size
    records = []
    for _ in range(count):
        if pos + 4 > len(payload):
            raise CacheError(f"{path}: record table truncated")
        (rec_len,) = struct.unpack_from("<I", payload, pos)
        pos += 4
        end = pos + rec_len
        if end > len(payload):
            raise CacheError(f"{path}: record overruns file")
        perms = []
        for _ in range(n_perms):
            perms.append(tuple(payload[pos : pos + n]))
            pos += n
        (npairs,) = struct.unpack_from("<I", payload, pos)
        pos += 4
        pairs = []
        for _ in range(npairs):
            exp, coeff = struct.unpack_from("<iq", payload, pos)
            pos += 12
            pairs.append((exp, coeff))
        if pos != end:
            raise CacheError(f"{path}: record length disagrees with content")
        records.append((tuple(perms), pairs))
    if pos != len(payload):
        raise CacheError(f"{path}: trailing bytes after last record")
    return records


# -- base-change tables -------------------------------------------------------------


def save_kl_table(table: KLTable, cache_dir: str | os.PathLike) -> Path:
    """Write the complete table of one rank; returns the file path."""
    gt = table.gt
    off = table.off

    def records():
        arr = table.table
        for wi in range(gt.order):
            for yi in range(gt.order):
                exps = np.nonzero(arr[wi, yi])[0]
                if exps.size:
                    pairs = [(int(k) - off, int(arr[wi, yi, k])) for k in exps]
                    yield (
                        (gt.perm(yi).images, gt.perm(wi).images),
                        pairs,
                    )

    path = cache_path(cache_dir, "kl_table", gt.n)
    _write_cache(path, "kl_table", gt.n, records())
    return path


def load_kl_table(n: int, cache_dir: str | os.PathLike) -> KLTable:
    """Reload a saved table; raises CacheError on damage, FileNotFoundError on miss."""
    path = cache_path(cache_dir, "kl_table", n)
    records = _read_cache(path, "kl_table", n)
    gt = GroupTable.build(n)
    width, off = kl_offset(gt)
    arr = np.zeros((gt.order, gt.order, width), dtype=np.int64)
    for (y_images, w_images), pairs in records:
        try:
            wi = gt.index[w_images]
            yi = gt.index[y_images]
        except KeyError as exc:
            raise CacheError(f"{path}: unknown permutation in record") from exc
        for exp, coeff in pairs:
            arr[wi, yi, off + exp] = coeff
    return KLTable(gt, arr, backend="cache")


def load_or_build_kl(
    n: int,
    cache_dir: Optional[str | os.PathLike],
    warn=None,
) -> tuple[KLTable, str]:
    """
    The table for rank n, preferring the cache: returns (table, state) with
    state one of "hit", "miss", "corrupt".  Damaged caches are reported
    through `warn` and silently recomputed and rewritten.
    """
    from .hecke import install_table, kl_table

    if cache_dir is None:
        return kl_table(n), "miss"
    state = "miss"
    try:
        table = load_kl_table(n, cache_dir)
        install_table(table)
        return table, "hit"
    except FileNotFoundError:
        pass
    except CacheError as exc:
        state = "corrupt"
        if warn is not None:
            warn(f"cache unusable, recomputing: {exc}")
    table = kl_table(n)
    save_kl_table(table, cache_dir)
    return table, state


# -- structure-constant families ------------------------------------------------------


def save_h_tensor(
    n: int,
    stack: np.ndarray,
    off: int,
    gt: GroupTable,
    cache_dir: str | os.PathLike,
) -> Path:
    """Write the stacked family: one record per nonzero h(x, y, z)."""

    def records():
        for yi in range(gt.order):
            slab = stack[yi]
            xs, zs = np.nonzero(slab.any(axis=2))
            for xi, zi in zip(xs, zs):
                exps = np.nonzero(slab[xi, zi])[0]
                pairs = [(int(k) - off, int(slab[xi, zi, k])) for k in exps]
                yield (
                    (
                        gt.perm(int(xi)).images,
                        gt.perm(yi).images,
                        gt.perm(int(zi)).images,
                    ),
                    pairs,
                )

    path = cache_path(cache_dir, "h_tensor", n)
    _write_cache(path, "h_tensor", n, records())
    return path


def load_h_tensor(
    n: int, gt: GroupTable, cache_dir: str | os.PathLike
) -> tuple[np.ndarray, int]:
    """Reload a stacked family as (int32 array indexed [y, x, z, k], off)."""
    path = cache_path(cache_dir, "h_tensor", n)
    records = _read_cache(path, "h_tensor", n)
    width, off = h_offset(gt)
    stack = np.zeros((gt.order, gt.order, gt.order, width), dtype=np.int32)
    for (x_images, y_images, z_images), pairs in records:
        try:
            xi = gt.index[x_images]
            yi = gt.index[y_images]
            zi = gt.index[z_images]
        except KeyError as exc:
            raise CacheError(f"{path}: unknown permutation in record") from exc
        for exp, coeff in pairs:
            stack[yi, xi, zi, off + exp] = coeff
    return stack, off
