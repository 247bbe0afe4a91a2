"""
Von Mangoldt tables from a segmented smallest-prime-factor sieve.

Memory: 4 bytes/entry for ``spf`` (8 above 2**32), 8 for ``lam`` and 8
for the optional ``psi_prefix``, so about 20 bytes per integer.  A table
to 10**6 is ~20 MB.
"""

from __future__ import annotations

import logging
import math
import struct
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numba
import numpy as np

from .errors import (
    CacheChecksumError,
    CacheFormatError,
    CacheVersionError,
    PreconditionError,
)

log = logging.getLogger(__name__)

CACHE_MAGIC = b"PRLB"
CACHE_VERSION = 1
_HEADER = struct.Struct("<4sBQ")

BYTES_PER_ENTRY = 20
SEGMENT = 1 << 20


@dataclass(frozen=True, eq=False)
class MangoldtTable:
    """Lambda(n) for 0 <= n <= limit.

    Attributes
    ----------
    limit : int
    spf : ndarray of uint32 or uint64
        Smallest prime factor, with spf[0] = spf[1] = 0.
    lam : ndarray of float64
        Lambda(n) in natural-log units; ``lam[p**t] == log(p)`` bitwise.
    psi_prefix : ndarray of float64 or None
        Running sums ``psi_prefix[x] = sum(lam[:x+1])``.
    """

    limit: int
    spf: np.ndarray
    lam: np.ndarray
    psi_prefix: Optional[np.ndarray] = None

    def prime_powers(self, upto: Optional[int] = None) -> np.ndarray:
        """Sorted prime powers n <= upto (default: the whole table)."""
        upto = self.limit if upto is None else upto
        if upto > self.limit:
            raise PreconditionError(
                f"table limit {self.limit} is below the required {upto}; rebuild with limit >= {upto}"
            )
        return np.flatnonzero(self.lam[: upto + 1] > 0)

    def __getitem__(self, n):
        return self.lam[n]


def _spf_dtype(limit: int):
    return np.uint32 if limit < 2**32 else np.uint64


def sieve_spf(limit: int) -> np.ndarray:
    """Smallest prime factor of every n <= limit by segmented Eratosthenes."""
    dtype = _spf_dtype(limit)
    try:
        spf = np.zeros(limit + 1, dtype=dtype)
    except MemoryError:
        raise MemoryError(
            f"sieve to {limit} needs ~{(limit + 1) * BYTES_PER_ENTRY / 2**20:.0f} MiB "
            f"({BYTES_PER_ENTRY} bytes/entry)"
        ) from None
    root = math.isqrt(limit)
    # base primes up to sqrt(limit) with a plain sieve
    is_p = np.ones(root + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(root) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    base = np.flatnonzero(is_p)

    for lo in range(0, limit + 1, SEGMENT):
        hi = min(lo + SEGMENT, limit + 1)
        seg = spf[lo:hi]
        for p in base:
            p = int(p)
            if p * p >= hi:
                break
            start = max(p * p, -(-lo // p) * p)
            view = seg[start - lo :: p]
            view[view == 0] = p
        idx = np.flatnonzero(seg == 0) + lo
        seg[idx[idx >= 2] - lo] = idx[idx >= 2]
    return spf


def lambda_from_spf(spf: np.ndarray) -> np.ndarray:
    """Lambda(n) = log spf(n) when n is a power of spf(n), else 0."""
    n = np.arange(spf.size, dtype=np.int64)
    p = spf.astype(np.int64)
    lam = np.zeros(spf.size, dtype=np.float64)
    live = np.flatnonzero(p >= 2)
    m = n[live]
    q = p[live]
    # strip the smallest prime completely; a prime power is left with 1
    while True:
        div = (m % q) == 0
        if not div.any():
            break
        m = np.where(div, m // q, m)
    pp = live[m == 1]
    lam[pp] = np.log(p[pp].astype(np.float64))
    return lam


def build(limit: int, with_psi: bool = True) -> MangoldtTable:
    """Sieve Lambda(n) for every n <= limit."""
    if limit < 1:
        raise PreconditionError(f"limit must be >= 1, got {limit}")
    spf = sieve_spf(int(limit))
    lam = lambda_from_spf(spf)
    psi = np.cumsum(lam) if with_psi else None
    return MangoldtTable(int(limit), spf, lam, psi)


def chebyshev_psi(table: MangoldtTable, x: int) -> float:
    """psi(x) = sum_{n <= x} Lambda(n)."""
    if x > table.limit:
        raise PreconditionError(f"x={x} exceeds table limit {table.limit}")
    if x < 1:
        return 0.0
    if table.psi_prefix is not None:
        return float(table.psi_prefix[x])
    return float(np.sum(table.lam[: x + 1]))


@numba.njit(cache=True)
def _fnv1a(data):
    h = np.uint64(0xCBF29CE484222325)
    prime = np.uint64(0x100000001B3)
    for b in data:
        h = (h ^ np.uint64(b)) * prime
    return h


def fnv1a64(payload: bytes) -> int:
    """64-bit FNV-1a over a byte string."""
    return int(_fnv1a(np.frombuffer(payload, dtype=np.uint8)))


def save_cache(table: MangoldtTable, path) -> None:
    """Write the spf array in the PRLB format.

    Layout (little-endian): magic ``PRLB``, u8 version, u64 limit, spf
    entries for 0..limit (u32, or u64 when limit >= 2**32), u64 FNV-1a
    checksum of the payload bytes.
    """
    dtype = np.dtype(_spf_dtype(table.limit)).newbyteorder("<")
    payload = np.ascontiguousarray(table.spf, dtype=dtype).tobytes()
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, table.limit))
        fh.write(payload)
        fh.write(struct.pack("<Q", fnv1a64(payload)))


def load_cache(path, with_psi: bool = True) -> MangoldtTable:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size or raw[:4] != CACHE_MAGIC:
        raise CacheFormatError(f"{path}: not a sieve cache (bad magic)")
    magic, version, limit = _HEADER.unpack_from(raw)
    if version != CACHE_VERSION:
        raise CacheVersionError(f"{path}: cache version {version}, expected {CACHE_VERSION}")
    dtype = np.dtype(_spf_dtype(limit)).newbyteorder("<")
    size = (limit + 1) * dtype.itemsize
    if len(raw) != _HEADER.size + size + 8:
        raise CacheChecksumError(
            f"{path}: expected {_HEADER.size + size + 8} bytes, found {len(raw)} (truncated or padded)"
        )
    payload = raw[_HEADER.size : _HEADER.size + size]
    (stored,) = struct.unpack_from("<Q", raw, _HEADER.size + size)
    if stored != fnv1a64(payload):
        raise CacheChecksumError(f"{path}: checksum mismatch")
    spf = np.frombuffer(payload, dtype=dtype).astype(_spf_dtype(limit))
    lam = lambda_from_spf(spf)
    return MangoldtTable(limit, spf, lam, np.cumsum(lam) if with_psi else None)


def load_or_build(limit: int, path=None) -> MangoldtTable:
    """Use a cache file when it covers ``limit``; otherwise sieve and (re)write it."""
    if path is not None and Path(path).exists():
        table = load_cache(path)
        if table.limit >= limit:
            log.info("loaded sieve cache %s (limit %d)", path, table.limit)
            return table
        log.info("cache %s covers only %d < %d; rebuilding", path, table.limit, limit)
    table = build(limit)
    if path is not None:
        save_cache(table, path)
    return table


_shared: Optional[MangoldtTable] = None
_shared_lock = threading.Lock()


def covering_table(limit: int) -> MangoldtTable:
    """A process-wide table with at least ``limit`` entries, grown on demand."""
    global _shared
    with _shared_lock:
        if _shared is None or _shared.limit < limit:
            size = max(limit, 2 * _shared.limit if _shared is not None else 1 << 16)
            _shared = build(size)
        return _shared
