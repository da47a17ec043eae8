"""Ground truth by enumeration: weights, volumes, and covering searches.

Everything here works on explicit vectors, so it only applies to spaces small
enough to scan, but within that range it is authoritative.  The formula
modules are tested against these routines, never the other way around.

The exact covering search runs under a SearchBudget.  Hitting a budget wall
raises BudgetExceededError rather than returning a guess, so callers can
always tell "searched and found nothing" apart from "gave up".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from time import monotonic

import numpy as np

from .errors import BudgetExceededError
from .geometry import as_distribution, canonical_center
from .gf import ExtensionField, FiniteField, get_field
from .kernels import rank_single
from .params import CodeParams
from .qanalog import gaussian_binomial
from .space import (
    DEFAULT_ENUM_CAP,
    blocks_to_index,
    get_context,
    index_to_blocks,
    subtract_indices,
)

_SCAN_CHUNK = 1 << 20
_HEX = "0123456789abcdef"


@dataclass(frozen=True)
class SearchBudget:
    """Caps for the enumeration routines.

    cover_cap bounds the space size the covering searches will touch,
    enum_cap bounds any single table or scan, and time_cap_secs (None for
    unlimited) bounds wall-clock time of the branch-and-bound search.
    """

    cover_cap: int = 1 << 16
    enum_cap: int = DEFAULT_ENUM_CAP
    time_cap_secs: float | None = None

    def deadline(self) -> float | None:
        if self.time_cap_secs is None:
            return None
        return monotonic() + self.time_cap_secs


def rank_over_base(field: FiniteField, matrix) -> int:
    """Rank of one matrix over the base field, by Gaussian elimination."""
    return rank_single(field, matrix)


@dataclass(frozen=True)
class BlockVector:
    """One space element in matrix form: ell blocks, each m rows of eta entries."""

    params: CodeParams
    blocks: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        p = self.params
        if len(self.blocks) != p.ell:
            raise ValueError(f"expected {p.ell} blocks, got {len(self.blocks)}")
        for block in self.blocks:
            if len(block) != p.m or any(len(row) != p.eta for row in block):
                raise ValueError(f"each block must be {p.m}x{p.eta}")
            if any(not 0 <= e < p.q for row in block for e in row):
                raise ValueError(f"matrix entry outside F_{p.q}")

    @classmethod
    def from_index(cls, params: CodeParams, idx: int) -> "BlockVector":
        if not 0 <= idx < params.space_size:
            raise ValueError("vector index outside the ambient space")
        return cls(params, index_to_blocks(params, idx))

    def to_index(self) -> int:
        return blocks_to_index(self.params, self.blocks)


def sum_rank_weight(vector: BlockVector) -> int:
    """Total rank across the blocks of one vector."""
    field = get_field(vector.params.q)
    return sum(rank_over_base(field, block) for block in vector.blocks)


def _index_weight(params: CodeParams, idx: int) -> int:
    field = get_field(params.q)
    return sum(rank_single(field, block) for block in index_to_blocks(params, idx))


def distance(params: CodeParams, x: int, y: int) -> int:
    diff = subtract_indices(get_field(params.q), params.m * params.n, x, y)
    return _index_weight(params, int(diff))


@dataclass(frozen=True)
class ExplicitCode:
    """A code as a sorted tuple of vector indices.

    linear is True only for codes built as the span of generator rows, in
    which case generator holds the rows (packed extension symbols) and the
    size is a power of q^m.
    """

    params: CodeParams
    indices: tuple[int, ...]
    linear: bool = False
    generator: tuple[tuple[int, ...], ...] | None = None

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, idx: int) -> bool:
        return idx in set(self.indices)

    @property
    def codewords(self) -> tuple[BlockVector, ...]:
        """The same code in matrix form, one BlockVector per word."""
        return tuple(BlockVector.from_index(self.params, i) for i in self.indices)

    @classmethod
    def from_indices(cls, params: CodeParams, indices) -> "ExplicitCode":
        uniq = sorted({int(i) for i in indices})
        if not uniq:
            raise ValueError("a code needs at least one vector")
        if uniq[0] < 0 or uniq[-1] >= params.space_size:
            raise ValueError("vector index outside the ambient space")
        return cls(params, tuple(uniq))

    @classmethod
    def from_generator(
        cls, params: CodeParams, rows, *, enum_cap: int = DEFAULT_ENUM_CAP
    ) -> "ExplicitCode":
        """Span of generator rows; each entry is a packed extension symbol.

        A symbol value v in [0, q^m) stands for the column vector of its
        base-q digits, so row layout matches the serialization and index
        conventions used everywhere else.
        """
        rows = [tuple(int(v) for v in row) for row in rows]
        n, order = params.n, params.q**params.m
        for row in rows:
            if len(row) != n:
                raise ValueError(f"generator rows must have {n} symbols")
            if any(not 0 <= v < order for v in row):
                raise ValueError("symbol outside the extension field")
        if order ** len(rows) > enum_cap:
            raise BudgetExceededError(
                f"span of {len(rows)} rows has up to {order ** len(rows)} words"
            )
        add, mul = _packed_ext_tables(params.q, params.m)
        span = np.zeros((1, n), dtype=np.int64)
        for row in rows:
            row_arr = np.asarray(row, dtype=np.int64)
            pieces = []
            for lam in range(order):
                scaled = mul[lam, row_arr]
                pieces.append(add[span, scaled[None, :]])
            span = np.concatenate(pieces, axis=0)
        place = np.asarray([params.q ** (params.m * j) for j in range(n)], dtype=object)
        packed = {int((word.astype(object) * place).sum()) for word in span}
        uniq = tuple(sorted(packed))
        return cls(params, uniq, linear=True, generator=tuple(rows))


@lru_cache(maxsize=None)
def _packed_ext_tables(q: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Add and mul tables for F_{q^m} elements packed as base-q integers."""
    ext = ExtensionField(get_field(q), m)
    order = ext.order
    if order > 1 << 12:
        raise BudgetExceededError(f"extension order {order} too large to tabulate")
    place = [q**i for i in range(m)]

    def pack(t) -> int:
        return sum(d * p for d, p in zip(t, place))

    elems = list(ext.elements())
    add = np.zeros((order, order), dtype=np.int64)
    mul = np.zeros((order, order), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            add[i, j] = pack(ext.add(a, b))
            mul[i, j] = pack(ext.mul(a, b))
    return add, mul


def min_distance(code: ExplicitCode, ell_mode: int | None = None) -> int:
    """Smallest pairwise distance; needs at least two codewords.

    For a linear code this is the least weight of a nonzero word, a linear
    scan; otherwise every pair is checked.
    """
    if len(code) < 2:
        raise ValueError("minimum distance needs two or more codewords")
    params = code.params
    mode = params.ell if ell_mode is None else ell_mode
    mp = params.reshaped(mode)
    best = mp.max_weight
    if code.linear:
        for idx in code.indices:
            if idx == 0:
                continue
            d = _index_weight(mp, idx)
            if d < best:
                best = d
                if best == 1:
                    break
        return best
    for x, y in itertools.combinations(code.indices, 2):
        d = distance(mp, x, y)
        if d < best:
            best = d
            if best == 1:
                break
    return best


def covering_radius(
    code: ExplicitCode,
    ell_mode: int | None = None,
    *,
    enum_cap: int = DEFAULT_ENUM_CAP,
) -> int:
    """Largest distance from any space element to the code."""
    params = code.params
    mode = params.ell if ell_mode is None else ell_mode
    ctx = get_context(params, enum_cap)
    w = ctx.weights(mode)
    worst = 0
    for start in range(0, params.space_size, _SCAN_CHUNK):
        idx = np.arange(start, min(start + _SCAN_CHUNK, params.space_size), dtype=np.int64)
        best = np.full(idx.shape, 255, dtype=np.uint8)
        for c in code.indices:
            np.minimum(best, w[ctx.subtract(idx, int(c))], out=best)
        worst = max(worst, int(best.max()))
    return worst


def brute_sphere_volume(
    params: CodeParams, t: int, *, enum_cap: int = DEFAULT_ENUM_CAP
) -> int:
    w = get_context(params, enum_cap).weights(params.ell)
    return int(np.count_nonzero(w == t))


def brute_ball_volume(
    params: CodeParams, t: int, *, enum_cap: int = DEFAULT_ENUM_CAP
) -> int:
    w = get_context(params, enum_cap).weights(params.ell)
    return int(np.count_nonzero(w <= t))


def brute_intersection_volume(
    params: CodeParams, tau: int, dist, *, enum_cap: int = DEFAULT_ENUM_CAP
) -> int:
    """Scan twin of geometry.intersection_volume, same center convention."""
    comp = as_distribution(params, dist)
    ctx = get_context(params, enum_cap)
    w = ctx.weights(params.ell)
    center = blocks_to_index(params, canonical_center(params, comp))
    total = 0
    for start in range(0, params.space_size, _SCAN_CHUNK):
        idx = np.arange(start, min(start + _SCAN_CHUNK, params.space_size), dtype=np.int64)
        near_zero = w[idx] <= tau
        near_center = w[ctx.subtract(idx, center)] <= tau
        total += int(np.count_nonzero(near_zero & near_center))
    return total


class _CoverSearch:
    """Branch and bound for small covering codes, all state vectorized."""

    def __init__(self, params: CodeParams, rho: int, budget: SearchBudget):
        if params.space_size > budget.cover_cap:
            raise BudgetExceededError(
                f"space has {params.space_size} vectors, covering cap is"
                f" {budget.cover_cap}"
            )
        self.params = params
        self.rho = rho
        self.size = params.space_size
        self.ctx = get_context(params, budget.enum_cap)
        self.w = self.ctx.weights(params.ell)
        self.ball0 = np.nonzero(self.w <= rho)[0]
        self.vball = int(self.ball0.shape[0])
        self.deadline = budget.deadline()
        self._banned: set[int] = set()
        self._balls_all: np.ndarray | None = None

    def _ball_matrix(self) -> np.ndarray | None:
        """Row c = ball(c), for every center at once; None if too large."""
        if self._balls_all is None and self.size * self.vball <= (1 << 23):
            flat = np.empty((self.size, self.vball), dtype=np.int32)
            for c in range(self.size):
                flat[c] = self.ctx.add(self.ball0, c) if c else self.ball0
            self._balls_all = flat
        return self._balls_all

    def _tick(self):
        if self.deadline is not None and monotonic() > self.deadline:
            raise BudgetExceededError("covering search ran out of time")

    def ball(self, c: int) -> np.ndarray:
        """Indices within rho of c (translation of the ball around zero)."""
        if c == 0:
            return self.ball0
        return np.sort(self.ctx.add(self.ball0, c))

    def packing_exceeds(self, points: np.ndarray, limit: int) -> bool:
        """Is some pairwise far-apart subset of points larger than limit?

        Points further than 2*rho apart can never share a center, so a
        packing of p such points needs p distinct centers.  Greedy gives a
        packing, not the largest one, so True is a proof and False says
        nothing.
        """
        separation = 2 * self.rho
        count = 0
        while points.size:
            count += 1
            if count > limit:
                return True
            p = int(points[0])
            points = points[self.w[self.ctx.subtract(points, p)] > separation]
        return False

    def packing_size(self) -> int:
        """Size of a greedy far-apart packing of the whole space."""
        separation = 2 * self.rho
        points = np.arange(self.size, dtype=np.int64)
        count = 0
        while points.size:
            count += 1
            p = int(points[0])
            points = points[self.w[self.ctx.subtract(points, p)] > separation]
        return count

    def greedy(self) -> list[int]:
        # counts[c] tracks how many still-uncovered points the ball at c
        # would claim; picking a center only dents counts near its ball
        counts = np.full(self.size, self.vball, dtype=np.int64)
        uncovered = np.ones(self.size, dtype=bool)
        chosen: list[int] = []
        while True:
            self._tick()
            if not uncovered.any():
                return chosen
            best = int(np.argmax(counts))
            assert counts[best] > 0
            chosen.append(best)
            members = self.ball(best)
            newly = members[uncovered[members]]
            uncovered[newly] = False
            for p in newly:
                counts[self.ball(int(p))] -= 1

    def exists(self, k: int) -> list[int] | None:
        """A covering of size <= k containing zero, or None if there is none.

        Covering codes translate freely, so forcing zero in loses nothing.
        """
        if k < 1:
            return None
        cov = np.zeros(self.size, dtype=np.int32)
        cov[self.ball0] += 1
        self._banned: set[int] = set()
        return self._dfs([0], cov, k)

    def _dfs(self, chosen: list[int], cov: np.ndarray, k: int) -> list[int] | None:
        self._tick()
        unc_mask = cov == 0
        unc = int(np.count_nonzero(unc_mask))
        if unc == 0:
            return list(chosen)
        rem = k - len(chosen)
        if rem <= 0 or unc > rem * self.vball:
            return None
        unc_idx = np.nonzero(unc_mask)[0]
        if self.packing_exceeds(unc_idx, rem):
            return None
        balls = self._ball_matrix()
        if balls is not None:
            rows = balls[unc_idx]
            # gains[c] = how many uncovered points the ball at c would claim;
            # banned centers are out of play, so they count for nothing
            gains = np.bincount(rows.ravel(), minlength=self.size)
            if self._banned:
                banned = np.fromiter(self._banned, np.int64, len(self._banned))
                gains[banned] = 0
            if rem < self.size:
                top = np.partition(gains, self.size - rem)[self.size - rem :]
                if int(top.sum()) < unc:
                    return None
            # most constrained point first: fewest centers left that reach it
            cand_gains = gains[rows]
            avail = np.count_nonzero(cand_gains, axis=1)
            u_pos = int(np.argmin(avail))
            if avail[u_pos] == 0:
                return None
            cands = [
                (-int(g), int(c))
                for g, c in zip(cand_gains[u_pos], rows[u_pos])
                if g > 0
            ]
        else:
            u = int(unc_idx[0])
            cands = []
            for c in self.ball(u):
                c = int(c)
                if c in self._banned:
                    continue
                gain = int(np.count_nonzero(unc_mask[self.ball(c)]))
                cands.append((-gain, c))
        if not cands:
            return None
        cands.sort()
        if -cands[0][0] + (rem - 1) * self.vball < unc:
            return None
        banned_here = []
        try:
            for _, c in cands:
                members = self.ball(c)
                cov[members] += 1
                chosen.append(c)
                hit = self._dfs(chosen, cov, k)
                if hit is not None:
                    return hit
                chosen.pop()
                cov[members] -= 1
                # any covering using c was fully explored above, so deeper
                # siblings may skip it; undone when this frame unwinds
                self._banned.add(c)
                banned_here.append(c)
        finally:
            for c in banned_here:
                self._banned.discard(c)
        return None


def greedy_min_covering(
    params: CodeParams, rho: int, budget: SearchBudget = SearchBudget()
) -> tuple[int, ExplicitCode]:
    """Deterministic greedy covering; an upper bound with witness, not a minimum."""
    search = _CoverSearch(params, rho, budget)
    code = ExplicitCode.from_indices(params, search.greedy())
    return len(code), code


def covering_exists(
    params: CodeParams, rho: int, k: int, budget: SearchBudget = SearchBudget()
) -> ExplicitCode | None:
    """Exact decision: is there a covering code of size at most k?"""
    search = _CoverSearch(params, rho, budget)
    hit = search.exists(k)
    return None if hit is None else ExplicitCode.from_indices(params, hit)


def exhaustive_min_covering(
    params: CodeParams, rho: int, budget: SearchBudget = SearchBudget()
) -> tuple[int, ExplicitCode]:
    """The exact minimum covering size and a witness, by iterative deepening."""
    search = _CoverSearch(params, rho, budget)
    greedy = search.greedy()
    lower = max(1, -(-params.space_size // search.vball), search.packing_size())
    witness = greedy
    for k in range(lower, len(greedy)):
        hit = search.exists(k)
        if hit is not None:
            witness = hit
            break
    code = ExplicitCode.from_indices(params, witness)
    assert covering_radius(code, enum_cap=budget.enum_cap) <= rho
    return len(code), code


def linear_min_covering(
    params: CodeParams, rho: int, budget: SearchBudget = SearchBudget()
) -> tuple[int, ExplicitCode]:
    """Smallest extension-linear covering code, by reduced-echelon sweep.

    Walks dimensions upward and, within a dimension, enumerates the codes in
    a fixed order (pivot columns, then free entries), so the witness is
    reproducible.  Linear codes can be strictly larger than the unrestricted
    minimum; see exhaustive_min_covering for that.
    """
    if params.space_size > budget.cover_cap:
        raise BudgetExceededError(
            f"space has {params.space_size} vectors, covering cap is"
            f" {budget.cover_cap}"
        )
    ctx = get_context(params, budget.enum_cap)
    w = ctx.weights(params.ell)
    if int(w.max()) <= rho:
        zero = ExplicitCode.from_generator(params, [], enum_cap=budget.enum_cap)
        return 1, zero
    size = params.space_size
    vball = int(np.count_nonzero(w <= rho))
    order = params.q**params.m
    n = params.n
    deadline = budget.deadline()
    idx_all = np.arange(size, dtype=np.int64)
    for k in range(1, n + 1):
        if order**k * vball < size:
            continue
        if gaussian_binomial(n, k, order) > budget.enum_cap:
            raise BudgetExceededError(
                f"dimension {k} has too many echelon forms to sweep"
            )
        for pivots in itertools.combinations(range(n), k):
            free_slots = [
                (i, c)
                for i in range(k)
                for c in range(pivots[i] + 1, n)
                if c not in pivots
            ]
            for assign in itertools.product(range(order), repeat=len(free_slots)):
                if deadline is not None and monotonic() > deadline:
                    raise BudgetExceededError("linear covering sweep ran out of time")
                rows = [[0] * n for _ in range(k)]
                for i in range(k):
                    rows[i][pivots[i]] = 1
                for (i, c), v in zip(free_slots, assign):
                    rows[i][c] = v
                code = ExplicitCode.from_generator(
                    params, rows, enum_cap=budget.enum_cap
                )
                uncovered = np.ones(size, dtype=bool)
                for word in code.indices:
                    uncovered &= w[ctx.subtract(idx_all, int(word))] > rho
                    if not uncovered.any():
                        return len(code), code
    raise AssertionError("the full space always covers; sweep cannot fall through")


def is_msrd(code: ExplicitCode) -> bool:
    """Does this linear code meet the sum-rank Singleton bound with equality?"""
    from .bounds import singleton_max_distance

    if not code.linear:
        raise ValueError("maximality against the Singleton bound needs a linear code")
    params = code.params
    order = params.q**params.m
    k, size = 0, 1
    while size < len(code):
        size *= order
        k += 1
    assert size == len(code), "a span always has q^(m k) words"
    if k == 0:
        raise ValueError("the zero code has no minimum distance")
    return min_distance(code) == singleton_max_distance(params, k)


def dump_code(code: ExplicitCode) -> str:
    """Text form: header line, then one codeword per line.

    A codeword is its blocks joined by '|'; a block is m*eta hex digits in
    row-major order.  Only base fields up to q = 16 fit in one hex digit.
    """
    params = code.params
    if params.q > 16:
        raise ValueError("text serialization only covers q <= 16")
    lines = [f"{params.q} {params.m} {params.eta} {params.ell}"]
    for idx in code.indices:
        blocks = index_to_blocks(params, idx)
        lines.append(
            "|".join(
                "".join(_HEX[e] for row in block for e in row) for block in blocks
            )
        )
    return "\n".join(lines) + "\n"


def load_code(text: str) -> ExplicitCode:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty code file")
    head = lines[0].split()
    if len(head) != 4:
        raise ValueError("header must be four integers: q m eta ell")
    q, m, eta, ell = (int(x) for x in head)
    params = CodeParams(q, m, eta, ell)
    if q > 16:
        raise ValueError("text serialization only covers q <= 16")
    indices = []
    for ln in lines[1:]:
        parts = ln.split("|")
        if len(parts) != ell:
            raise ValueError(f"expected {ell} blocks, got {len(parts)}: {ln!r}")
        blocks = []
        for part in parts:
            if len(part) != m * eta:
                raise ValueError(f"block {part!r} is not {m}x{eta}")
            digits = [_HEX.index(ch) for ch in part.lower()]
            if any(d >= q for d in digits):
                raise ValueError(f"digit outside F_{q} in block {part!r}")
            blocks.append(
                tuple(
                    tuple(digits[r * eta + c] for c in range(eta)) for r in range(m)
                )
            )
        indices.append(blocks_to_index(params, tuple(blocks)))
    return ExplicitCode.from_indices(params, indices)
