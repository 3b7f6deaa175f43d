"""Kernel backend selection plus packing helpers shared by both backends.

The compiled extension is used when importable; set HOMBOUND_PURE=1 to force
the pure-Python implementation.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

if os.environ.get("HOMBOUND_PURE", "").strip() not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
boundary_rank = _impl.boundary_rank
find_k_coloring = _impl.find_k_coloring


def pack_adjacency(n: int, edges) -> np.ndarray:
    """Bit-pack an edge list into the (n, W) uint64 layout the kernels use.

    Loops are dropped: callers reject them before coloring.
    """
    W = max(1, (n + 63) // 64)
    adj = np.zeros((n, W), dtype=np.uint64)
    for u, v in edges:
        if u == v:
            continue
        adj[u, v >> 6] |= np.uint64(1 << (v & 63))
        adj[v, u >> 6] |= np.uint64(1 << (u & 63))
    return adj


def csc_arrays(n_rows: int, columns) -> tuple[int, np.ndarray, np.ndarray, np.ndarray]:
    """Build compressed-column arrays from an iterable of (row, value) lists."""
    indptr = [0]
    rows: list[int] = []
    vals: list[int] = []
    for col in columns:
        for r, v in col:
            rows.append(r)
            vals.append(v)
        indptr.append(len(rows))
    return (
        n_rows,
        np.asarray(indptr, dtype=np.int64),
        np.asarray(rows, dtype=np.int64),
        np.asarray(vals, dtype=np.int64),
    )
