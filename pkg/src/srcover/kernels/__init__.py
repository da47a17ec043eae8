"""Rank-enumeration kernels with backend selection.

The compiled Cython core is used when it imported cleanly and the
SRCOVER_FORCE_PURE environment variable is not set; otherwise the numpy
fallback takes over.  Both backends implement the same contract and are
compared in tests and in benchmarks/bench_kernels.py.
"""

from __future__ import annotations

import os

import numpy as np

from . import _ranks_py

_compiled = None
if not os.environ.get("SRCOVER_FORCE_PURE"):
    try:
        from . import _ranks_cy as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None


def backend_name() -> str:
    return "cython" if _compiled is not None else _ranks_py.BACKEND_NAME


def rank_table(field, rows: int, cols: int) -> np.ndarray:
    """Ranks of every rows x cols matrix over the field, indexed by digits.

    Index digit k (base q) is entry (k % rows, k // rows) of the matrix.
    """
    if not field.has_tables:
        raise ValueError(f"q={field.q} has no dense tables; rank_table needs q <= 256")
    if rows < 1 or cols < 1:
        raise ValueError("matrix dimensions must be positive")
    impl = _compiled if _compiled is not None else _ranks_py
    return impl.rank_table(
        field.q, rows, cols, field.sub_table, field.mul_table, field.inv_table
    )


def rank_single(field, matrix) -> int:
    """Reference rank of one matrix (list of row sequences) over the field."""
    if field.has_tables:
        return _ranks_py.rank_single(
            field.sub_table, field.mul_table, field.inv_table, matrix
        )
    # big fields: same elimination with scalar ops
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        f = field.inv(a[r][c])
        a[r] = [field.mul(f, x) for x in a[r]]
        for i in range(r + 1, rows):
            coef = a[i][c]
            if coef:
                a[i] = [field.sub(x, field.mul(coef, y)) for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r
