"""Index arithmetic and weight tables over the ambient space.

A space element is the integer whose base-q digits, least significant first,
run through the matrix entries in (block, column, row) order: digit
i*m*eta + c*m + r is entry (r, c) of block i.  Block i therefore occupies a
contiguous digit run, and regrouping the same digits under a different block
shape (one block, native, or per-coordinate blocks) never changes the index;
this is what lets one code be measured under all three metrics.

Because field addition is digit-wise in the prime base, index addition and
subtraction are digit-wise too: XOR in characteristic 2, chunked lookup
tables otherwise.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import kernels
from .errors import BudgetExceededError
from .gf import FiniteField, get_field
from .params import CodeParams

DEFAULT_ENUM_CAP = 1 << 24


def _check_cap(count: int, cap: int, what: str):
    if count > cap:
        raise BudgetExceededError(f"{what} needs {count} vector slots, cap is {cap}")


@lru_cache(maxsize=None)
def _chunk_sub_table(q: int, width: int) -> np.ndarray:
    """sub_table for packed runs of `width` F_q digits (odd characteristic)."""
    field = get_field(q)
    size = q**width
    place = q ** np.arange(width, dtype=np.int64)
    digits = (np.arange(size)[:, None] // place) % q
    diff = field.sub_table[digits[:, None, :], digits[None, :, :]].astype(np.int64)
    return (diff * place).sum(axis=2)


@lru_cache(maxsize=None)
def _chunk_width(q: int) -> int:
    w = 1
    while q ** (w + 1) <= 256:
        w += 1
    return w


def subtract_indices(field: FiniteField, num_digits: int, xs, c: int):
    """xs - c per F_q digit; xs may be an int or an int64 ndarray."""
    if field.p == 2:
        return xs ^ c
    q = field.q
    if not isinstance(xs, np.ndarray):
        # plain ints take the exact path; no int64 ceiling on the space size
        out = 0
        place = 1
        xx, cc = int(xs), c
        for _ in range(num_digits):
            out += field.sub(xx % q, cc % q) * place
            xx //= q
            cc //= q
            place *= q
        return out
    w = _chunk_width(q)
    table = _chunk_sub_table(q, w)
    out = xs * 0
    shift = 1
    chunk_size = q**w
    cc = c
    rem = num_digits
    while rem > 0:
        out = out + table[(xs // shift) % chunk_size, cc % chunk_size] * shift
        cc //= chunk_size
        shift *= chunk_size
        rem -= w
    return out


def add_indices(field: FiniteField, num_digits: int, xs, c: int):
    """xs + c per F_q digit (same layout rules as subtract_indices)."""
    if field.p == 2:
        return xs ^ c
    return subtract_indices(field, num_digits, xs, negate_index(field, num_digits, c))


def negate_index(field: FiniteField, num_digits: int, c: int) -> int:
    if field.p == 2:
        return c
    return int(subtract_indices(field, num_digits, 0, c))


def index_to_blocks(params: CodeParams, idx: int) -> tuple:
    """Matrix view: tuple of ell blocks, each a tuple of m rows of eta entries."""
    q, m, eta = params.q, params.m, params.eta
    blocks = []
    for _ in range(params.ell):
        entries = []
        for _ in range(m * eta):
            entries.append(idx % q)
            idx //= q
        rows = tuple(
            tuple(entries[c * m + r] for c in range(eta)) for r in range(m)
        )
        blocks.append(rows)
    return tuple(blocks)


def blocks_to_index(params: CodeParams, blocks) -> int:
    q, m, eta = params.q, params.m, params.eta
    idx = 0
    place = 1
    for block in blocks:
        for c in range(eta):
            for r in range(m):
                idx += int(block[r][c]) * place
                place *= q
    return idx


class SpaceContext:
    """Cached per-parameter tables: block ranks and whole-space weights."""

    def __init__(self, params: CodeParams, enum_cap: int = DEFAULT_ENUM_CAP):
        self.params = params
        self.field = get_field(params.q)
        self.enum_cap = enum_cap
        self._block_ranks: dict[int, np.ndarray] = {}
        self._weights: dict[int, np.ndarray] = {}

    def block_rank_table(self, eta_mode: int) -> np.ndarray:
        """Rank of every m x eta_mode matrix, indexed by its digit run."""
        if eta_mode not in self._block_ranks:
            _check_cap(
                self.params.q ** (self.params.m * eta_mode),
                self.enum_cap,
                f"rank table for {self.params.m}x{eta_mode} blocks",
            )
            self._block_ranks[eta_mode] = kernels.rank_table(
                self.field, self.params.m, eta_mode
            )
        return self._block_ranks[eta_mode]

    def weights(self, ell_mode: int) -> np.ndarray:
        """Sum-rank weight of every space element under the given blocking."""
        p = self.params
        if ell_mode not in (1, p.ell, p.n):
            raise ValueError(f"ell_mode must be one of 1, {p.ell}, {p.n}")
        if ell_mode not in self._weights:
            _check_cap(p.space_size, self.enum_cap, "weight table")
            eta_mode = p.n // ell_mode
            block = self.block_rank_table(eta_mode)
            w = block
            for _ in range(ell_mode - 1):
                # more significant block contributes the outer axis
                w = (block[:, None] + w[None, :]).reshape(-1)
            self._weights[ell_mode] = w
            assert int(w.max(initial=0)) <= min(p.m, eta_mode) * ell_mode
        return self._weights[ell_mode]

    def subtract(self, xs, c: int):
        return subtract_indices(self.field, self.params.m * self.params.n, xs, c)

    def add(self, xs, c: int):
        return add_indices(self.field, self.params.m * self.params.n, xs, c)


@lru_cache(maxsize=16)
def get_context(params: CodeParams, enum_cap: int = DEFAULT_ENUM_CAP) -> SpaceContext:
    return SpaceContext(params, enum_cap)
