"""Pure numpy rank kernels (fallback backend).

rank_table eliminates every matrix of a chunk simultaneously: column by
column, each matrix picks its own pivot row with argmax on a boolean mask,
swaps it in with fancy indexing, and clears everything below it through the
field's dense op tables.  Data-dependent pivoting is what keeps this out of
reach of a one-liner, not the field arithmetic.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy"
_CHUNK = 1 << 20


def rank_single(sub, mul, inv, matrix) -> int:
    """Rank of one matrix given as a list of row lists (reference path)."""
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        f = inv[a[r][c]]
        a[r] = [mul[f, x] for x in a[r]]
        for i in range(r + 1, rows):
            coef = a[i][c]
            if coef:
                a[i] = [sub[x, mul[coef, y]] for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def rank_table(q: int, rows: int, cols: int, sub, mul, inv) -> np.ndarray:
    """Ranks of all q**(rows*cols) matrices, indexed by base-q digits.

    Digit k of the index is entry (k % rows, k // rows): column-major, matching
    the coordinate layout of the ambient space.
    """
    total = q ** (rows * cols)
    out = np.empty(total, np.uint8)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        out[start : start + idx.size] = _rank_chunk(idx, q, rows, cols, sub, mul, inv)
    return out


def _rank_chunk(idx, q, rows, cols, sub, mul, inv):
    n = idx.size
    digits = (idx[:, None] // q ** np.arange(rows * cols, dtype=np.int64)) % q
    a = np.ascontiguousarray(
        digits.reshape(n, cols, rows).transpose(0, 2, 1).astype(np.uint8)
    )
    row_ids = np.arange(rows)
    all_m = np.arange(n)
    pr = np.zeros(n, np.intp)  # next pivot row, doubles as current rank
    for c in range(cols):
        colv = a[:, :, c]
        eligible = (colv != 0) & (row_ids[None, :] >= pr[:, None])
        has = eligible.any(axis=1)
        # matrices already at full rank keep pr == rows; clamp the row index
        # they use so their (all no-op) steps stay in bounds
        prc = np.minimum(pr, rows - 1)
        piv = np.where(has, eligible.argmax(axis=1), prc)
        # swap pivot row into position pr (no-op when piv == pr)
        tmp = a[all_m, piv].copy()
        a[all_m, piv] = a[all_m, prc]
        a[all_m, prc] = tmp
        # scale the pivot row to leading 1 (factor 1 where there is no pivot)
        lead = a[all_m, prc, c]
        factor = np.where(has, inv[lead], 1).astype(np.uint8)
        a[all_m, prc] = mul[factor[:, None], a[all_m, prc]]
        # clear entries below the pivot
        pivot_rows = a[all_m, prc]
        coef = a[:, :, c]
        kill = (row_ids[None, :] > pr[:, None]) & has[:, None] & (coef != 0)
        updated = sub[a, mul[coef[:, :, None], pivot_rows[:, None, :]]]
        a = np.where(kill[:, :, None], updated, a)
        pr = pr + has
        if (pr == rows).all():
            break
    return pr.astype(np.uint8)
