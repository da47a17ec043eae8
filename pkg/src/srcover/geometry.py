"""Sum-rank spheres, balls, and two-center intersections, all exact.

Sphere volumes decompose over blocks: a weight-t sphere is the disjoint union,
over compositions of t into ell parts bounded by mu, of products of
fixed-rank matrix counts.  The implementation convolves the per-block rank
counts ell times, which is the same sum arranged as a polynomial power.

Intersection volumes have no known closed form; they are computed exactly by
a joint-distribution walk: for each block, a table counts matrices by
(own rank, rank of the difference from the canonical center block), and a
small DP convolves those tables under the two radius caps.  This is the
efficient twin of the full-space scan in the oracle module.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import kernels
from .errors import BudgetExceededError
from .gf import get_field
from .params import CodeParams
from .qanalog import binomial, num_matrices_of_rank
from .space import DEFAULT_ENUM_CAP, subtract_indices


@dataclass(frozen=True)
class Composition:
    """Ordered parts of a sum-rank weight, one entry per block."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(x) for x in self.parts))

    @property
    def total(self) -> int:
        return sum(self.parts)


# a weight split across blocks is structurally just a bounded composition
WeightDistribution = Composition


def as_distribution(params: CodeParams, dist) -> Composition:
    """Validate parts against (ell, mu) and normalize to a Composition."""
    parts = tuple(dist.parts) if isinstance(dist, Composition) else tuple(dist)
    if len(parts) != params.ell:
        raise ValueError(f"need {params.ell} parts, got {len(parts)}")
    for x in parts:
        if not 0 <= int(x) <= params.mu:
            raise ValueError(f"block weight {x} outside [0, {params.mu}]")
    return Composition(parts)


def count_bounded_compositions(t: int, ell: int, mu: int) -> int:
    """Number of ways to write t = t_1 + ... + t_ell with 0 <= t_i <= mu.

    Standard inclusion-exclusion over parts forced past mu:
    sum_i (-1)^i C(ell, i) C(t - (mu+1)i + ell - 1, ell - 1).
    """
    if ell < 1 or mu < 0:
        raise ValueError("need ell >= 1 and mu >= 0")
    if t < 0 or t > mu * ell:
        return 0
    total = 0
    for i in range(ell + 1):
        term = binomial(ell, i) * binomial(t - (mu + 1) * i + ell - 1, ell - 1)
        total += -term if i % 2 else term
    return total


def enumerate_bounded_compositions(t: int, ell: int, mu: int) -> Iterator[Composition]:
    """Yield all bounded compositions, largest first part first (descending lex)."""
    if ell < 1 or mu < 0:
        raise ValueError("need ell >= 1 and mu >= 0")

    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 0:
            if remaining == 0:
                yield Composition(tuple(prefix))
            return
        hi = min(mu, remaining)
        lo = max(0, remaining - mu * (slots - 1))
        for v in range(hi, lo - 1, -1):
            prefix.append(v)
            yield from rec(prefix, remaining - v, slots - 1)
            prefix.pop()

    if 0 <= t <= mu * ell:
        yield from rec([], t, ell)


@lru_cache(maxsize=None)
def _sphere_coeffs(params: CodeParams) -> tuple[int, ...]:
    """Coefficient j = volume of the weight-j sphere; exact big ints."""
    block = [
        num_matrices_of_rank(params.m, params.eta, j, params.q)
        for j in range(params.mu + 1)
    ]
    coeffs = [1]
    for _ in range(params.ell):
        out = [0] * (len(coeffs) + params.mu)
        for i, a in enumerate(coeffs):
            if a:
                for j, b in enumerate(block):
                    out[i + j] += a * b
        coeffs = out
    return tuple(coeffs)


def sphere_volume(params: CodeParams, t: int) -> int:
    """Number of vectors of sum-rank weight exactly t."""
    if t < 0 or t > params.max_weight:
        return 0
    return _sphere_coeffs(params)[t]


def ball_volume(params: CodeParams, t: int) -> int:
    """Number of vectors of sum-rank weight at most t."""
    if t < 0:
        return 0
    t = min(t, params.max_weight)
    return sum(_sphere_coeffs(params)[: t + 1])


def canonical_center(params: CodeParams, dist) -> tuple:
    """Matrix-view vector whose block i is the diagonal 0/1 matrix of rank dist[i]."""
    comp = as_distribution(params, dist)
    blocks = []
    for d in comp.parts:
        rows = tuple(
            tuple(1 if (r == c and r < d) else 0 for c in range(params.eta))
            for r in range(params.m)
        )
        blocks.append(rows)
    return tuple(blocks)


@lru_cache(maxsize=None)
def _joint_block_tables(q: int, m: int, eta: int, enum_cap: int) -> list[list[list[int]]]:
    """For each center rank d: table[t][s] = #{Y : rk Y = t, rk(Y - C_d) = s}.

    C_d is the canonical diagonal rank-d block.  Entries are Python ints so
    later DP products never overflow.
    """
    mu = min(m, eta)
    block_count = q ** (m * eta)
    if block_count > enum_cap:
        raise BudgetExceededError(
            f"per-block table needs {block_count} entries, cap is {enum_cap}"
        )
    field = get_field(q)
    ranks = kernels.rank_table(field, m, eta)
    all_idx = np.arange(block_count, dtype=np.int64)
    tables = []
    for d in range(mu + 1):
        center = 0
        for j in range(d):
            # entry (j, j) of the block sits at digit j*m + j
            center += q ** (j * m + j)
        shifted = ranks[subtract_indices(field, m * eta, all_idx, center)]
        flat = np.bincount(
            ranks.astype(np.int64) * (mu + 1) + shifted, minlength=(mu + 1) ** 2
        )
        tables.append(
            [[int(flat[t * (mu + 1) + s]) for s in range(mu + 1)] for t in range(mu + 1)]
        )
    return tables


def intersection_volume(
    params: CodeParams, tau: int, dist, *, enum_cap: int = DEFAULT_ENUM_CAP
) -> int:
    """Vectors within sum-rank radius tau of both 0 and canonical_center(dist).

    Returns 0 immediately when dist.total > 2*tau (the balls cannot meet).
    """
    comp = as_distribution(params, dist)
    if tau < 0:
        return 0
    if comp.total > 2 * tau:
        return 0
    tau = min(tau, params.max_weight)
    tables = _joint_block_tables(params.q, params.m, params.eta, enum_cap)
    # DP over blocks on (weight so far, distance-to-center so far)
    states = {(0, 0): 1}
    for d in comp.parts:
        table = tables[d]
        nxt: dict[tuple[int, int], int] = {}
        for (a, b), cnt in states.items():
            for t in range(min(params.mu, tau - a) + 1):
                row = table[t]
                for s in range(min(params.mu, tau - b) + 1):
                    c = row[s]
                    if c:
                        key = (a + t, b + s)
                        nxt[key] = nxt.get(key, 0) + cnt * c
        states = nxt
    return sum(states.values())
