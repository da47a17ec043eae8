"""Volume formulas against whole-space enumeration on small parameter sets."""

import pytest

from srcover.errors import BudgetExceededError
from srcover.geometry import (
    Composition,
    as_distribution,
    ball_volume,
    canonical_center,
    count_bounded_compositions,
    enumerate_bounded_compositions,
    intersection_volume,
    sphere_volume,
)
from srcover.gf import get_field
from srcover.params import CodeParams
from srcover.qanalog import binomial, num_matrices_of_rank
from srcover.space import blocks_to_index, index_to_blocks, subtract_indices
from tests.test_kernels import slow_rank


def slow_weight(params, idx):
    field = get_field(params.q)
    return sum(slow_rank(field, block) for block in index_to_blocks(params, idx))


def slow_sphere_volumes(params):
    counts = [0] * (params.max_weight + 1)
    for idx in range(params.space_size):
        counts[slow_weight(params, idx)] += 1
    return counts


SMALL_PARAMS = [
    CodeParams(q=2, m=2, eta=2, ell=2),
    CodeParams(q=3, m=2, eta=1, ell=2),
    CodeParams(q=4, m=1, eta=2, ell=2),
    CodeParams(q=2, m=1, eta=3, ell=2),
    CodeParams(q=2, m=3, eta=2, ell=1),
]


@pytest.mark.parametrize("params", SMALL_PARAMS, ids=str)
def test_sphere_volume_matches_enumeration(params):
    counts = slow_sphere_volumes(params)
    for t in range(params.max_weight + 1):
        assert sphere_volume(params, t) == counts[t], t
    assert sum(counts) == params.space_size


@pytest.mark.parametrize("params", SMALL_PARAMS, ids=str)
def test_ball_volume_is_partial_sum(params):
    running = 0
    for t in range(params.max_weight + 1):
        running += sphere_volume(params, t)
        assert ball_volume(params, t) == running
    assert ball_volume(params, params.max_weight) == params.space_size
    assert ball_volume(params, params.max_weight + 9) == params.space_size
    assert ball_volume(params, -1) == 0
    assert sphere_volume(params, -1) == 0
    assert sphere_volume(params, params.max_weight + 1) == 0


def test_known_volume_table_2222():
    params = CodeParams(q=2, m=2, eta=2, ell=2)
    assert [sphere_volume(params, t) for t in range(5)] == [1, 18, 93, 108, 36]
    assert [ball_volume(params, t) for t in range(5)] == [1, 19, 112, 220, 256]


def test_single_block_reduces_to_fixed_rank_counts():
    params = CodeParams(q=3, m=3, eta=2, ell=1)
    for t in range(params.mu + 1):
        assert sphere_volume(params, t) == num_matrices_of_rank(3, 2, t, 3)


def test_unit_columns_reduce_to_hamming():
    # eta = 1 blocks have rank 0 or 1, so spheres follow the Hamming pattern
    # over an alphabet of size q^m
    params = CodeParams(q=3, m=2, eta=1, ell=4)
    for t in range(params.ell + 1):
        assert sphere_volume(params, t) == binomial(4, t) * (3**2 - 1) ** t


@pytest.mark.parametrize(
    "t,ell,mu",
    [(t, ell, mu) for t in range(0, 9) for ell in (1, 2, 3, 4) for mu in (0, 1, 2, 3)],
)
def test_composition_count_matches_enumeration(t, ell, mu):
    listed = list(enumerate_bounded_compositions(t, ell, mu))
    assert count_bounded_compositions(t, ell, mu) == len(listed)
    assert len(set(listed)) == len(listed)
    for comp in listed:
        assert len(comp.parts) == ell
        assert comp.total == t
        assert all(0 <= part <= mu for part in comp.parts)


def test_composition_enumeration_order():
    parts = [c.parts for c in enumerate_bounded_compositions(3, 3, 2)]
    assert parts == sorted(parts, reverse=True)


def test_composition_edges():
    assert count_bounded_compositions(-1, 2, 3) == 0
    assert count_bounded_compositions(7, 2, 3) == 0
    assert count_bounded_compositions(0, 3, 0) == 1
    assert list(enumerate_bounded_compositions(1, 2, 0)) == []
    with pytest.raises(ValueError):
        count_bounded_compositions(1, 0, 2)
    with pytest.raises(ValueError):
        list(enumerate_bounded_compositions(1, 1, -1))


def test_composition_count_variant_with_wrong_lower_index_disagrees():
    # a tempting transcription error puts ell instead of ell - 1 in the lower
    # binomial index; at (t, ell, mu) = (1, 2, 1) it yields 1, enumeration 2,
    # which pins the implemented form
    def variant(t, ell, mu):
        total = 0
        for i in range(ell + 1):
            term = binomial(ell, i) * binomial(t - (mu + 1) * i + ell - 1, ell)
            total += -term if i % 2 else term
        return total

    assert variant(1, 2, 1) == 1
    assert count_bounded_compositions(1, 2, 1) == 2
    assert len(list(enumerate_bounded_compositions(1, 2, 1))) == 2


def test_as_distribution_validation():
    params = CodeParams(q=2, m=2, eta=2, ell=2)
    comp = as_distribution(params, (2, 1))
    assert comp == Composition((2, 1))
    assert as_distribution(params, comp) == comp
    with pytest.raises(ValueError):
        as_distribution(params, (1,))
    with pytest.raises(ValueError):
        as_distribution(params, (3, 0))
    with pytest.raises(ValueError):
        as_distribution(params, (-1, 1))


def test_canonical_center_block_ranks():
    params = CodeParams(q=3, m=3, eta=2, ell=3)
    field = get_field(3)
    blocks = canonical_center(params, (2, 0, 1))
    assert [slow_rank(field, b) for b in blocks] == [2, 0, 1]
    assert blocks[2][0][0] == 1 and blocks[2][1][1] == 0


def slow_intersection(params, tau, dist):
    center = blocks_to_index(params, canonical_center(params, dist))
    field = get_field(params.q)
    hits = 0
    for idx in range(params.space_size):
        if slow_weight(params, idx) > tau:
            continue
        diff = subtract_indices(field, params.m * params.n, idx, center)
        if slow_weight(params, diff) <= tau:
            hits += 1
    return hits


@pytest.mark.parametrize("params", SMALL_PARAMS[:4], ids=str)
def test_intersection_matches_enumeration(params):
    for tau in range(params.max_weight + 1):
        for dist in enumerate_bounded_compositions(
            min(2 * tau, params.max_weight), params.ell, params.mu
        ):
            assert intersection_volume(params, tau, dist) == slow_intersection(
                params, tau, dist
            ), (tau, dist)


def test_intersection_known_values():
    params = CodeParams(q=2, m=2, eta=2, ell=2)
    assert intersection_volume(params, 1, (2, 0)) == 6
    assert intersection_volume(params, 1, (1, 1)) == 2


def test_intersection_edges():
    params = CodeParams(q=2, m=2, eta=2, ell=2)
    assert intersection_volume(params, -1, (0, 0)) == 0
    # centers further apart than 2 tau cannot share points
    assert intersection_volume(params, 1, (2, 1)) == 0
    # coincident centers collapse to a plain ball
    for tau in range(5):
        assert intersection_volume(params, tau, (0, 0)) == ball_volume(params, tau)
    # a radius past the diameter covers everything
    assert intersection_volume(params, 9, (1, 0)) == params.space_size


def test_intersection_is_symmetric_in_parts():
    params = CodeParams(q=2, m=2, eta=2, ell=2)
    assert intersection_volume(params, 2, (2, 0)) == intersection_volume(
        params, 2, (0, 2)
    )


def test_intersection_budget():
    params = CodeParams(q=2, m=4, eta=4, ell=1)
    with pytest.raises(BudgetExceededError):
        intersection_volume(params, 2, (2,), enum_cap=100)
