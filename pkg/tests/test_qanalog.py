"""Exact combinatorics against small hand-enumerable oracles."""

from fractions import Fraction
from itertools import product

import pytest

from srcover.errors import PrecisionError
from srcover.qanalog import (
    RealInterval,
    binomial,
    checked_sub,
    exact_div,
    gamma_q_interval,
    gaussian_binomial,
    int_nth_root,
    is_prime,
    num_matrices_of_rank,
    pow_fraction_interval,
    power,
    prime_power_decompose,
)


def brute_rank_mod_p(matrix, p):
    """Row reduction over F_p, written independently of the package."""
    a = [list(row) for row in matrix]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    rank = 0
    for c in range(cols):
        piv = None
        for r in range(rank, rows):
            if a[r][c] % p:
                piv = r
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], p - 2, p) if p > 2 else a[rank][c]
        a[rank] = [(inv * x) % p for x in a[rank]]
        for r in range(rows):
            if r != rank and a[r][c] % p:
                f = a[r][c]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def all_matrices(rows, cols, p):
    for entries in product(range(p), repeat=rows * cols):
        yield [list(entries[r * cols : (r + 1) * cols]) for r in range(rows)]


def test_checked_sub_rejects_negative():
    assert checked_sub(5, 3) == 2
    with pytest.raises(AssertionError):
        checked_sub(3, 5)


def test_exact_div_rejects_remainder():
    assert exact_div(12, 4) == 3
    with pytest.raises(AssertionError):
        exact_div(12, 5)


def test_is_prime_small_range():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(50):
        assert is_prime(n) == (n in primes)


@pytest.mark.parametrize(
    "q,expected",
    [(2, (2, 1)), (3, (3, 1)), (4, (2, 2)), (8, (2, 3)), (9, (3, 2)), (25, (5, 2))],
)
def test_prime_power_decompose(q, expected):
    assert prime_power_decompose(q) == expected


@pytest.mark.parametrize("q", [1, 6, 10, 12, 100])
def test_prime_power_decompose_rejects_composites(q):
    with pytest.raises(ValueError):
        prime_power_decompose(q)


def test_power_matches_builtin():
    assert power(2, 10) == 1024
    assert power(3, 0) == 1
    with pytest.raises(ValueError):
        power(1, 3)
    with pytest.raises(ValueError):
        power(2, -1)


def test_binomial_pascal_triangle():
    for n in range(12):
        for k in range(n + 1):
            left = binomial(n - 1, k - 1) if k else 0
            right = binomial(n - 1, k) if k < n else 0
            if 0 < n:
                assert binomial(n, k) == left + right
    assert binomial(5, -1) == 0
    assert binomial(5, 6) == 0


def count_subspaces(n, t, q):
    """Number of t-dimensional subspaces of F_q^n, by listing spans.

    Only prime q, so scalar arithmetic is plain mod-p.  Slow but independent.
    """
    vectors = list(product(range(q), repeat=n))

    def span(basis):
        seen = {(0,) * n}
        for v in basis:
            additions = []
            for w in seen:
                for c in range(1, q):
                    additions.append(tuple((a * c + b) % q for a, b in zip(v, w)))
            seen.update(additions)
        return frozenset(seen)

    subspaces = set()
    for basis in product(vectors, repeat=t):
        if brute_rank_mod_p(list(basis), q) == t:
            subspaces.add(span(basis))
    if t == 0:
        return 1
    return len(subspaces)


@pytest.mark.parametrize(
    "n,t,q",
    [(1, 0, 2), (2, 1, 2), (3, 1, 2), (3, 2, 2), (4, 2, 2), (2, 1, 3), (3, 2, 3)],
)
def test_gaussian_binomial_counts_subspaces(n, t, q):
    assert gaussian_binomial(n, t, q) == count_subspaces(n, t, q)


def test_gaussian_binomial_known_value():
    # 2-dimensional subspaces of F_2^4
    assert gaussian_binomial(4, 2, 2) == 35


def test_gaussian_binomial_symmetry_and_range():
    for n in range(7):
        for t in range(n + 1):
            assert gaussian_binomial(n, t, 3) == gaussian_binomial(n, n - t, 3)
    assert gaussian_binomial(4, 5, 2) == 0
    assert gaussian_binomial(4, -1, 2) == 0


@pytest.mark.parametrize("rows,cols,q", [(2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3)])
def test_num_matrices_of_rank_vs_enumeration(rows, cols, q):
    counted = {}
    for mat in all_matrices(rows, cols, q):
        r = brute_rank_mod_p(mat, q)
        counted[r] = counted.get(r, 0) + 1
    for t in range(min(rows, cols) + 1):
        assert num_matrices_of_rank(rows, cols, t, q) == counted.get(t, 0)


def test_num_matrices_of_rank_totals():
    for rows, cols, q in [(2, 2, 4), (1, 3, 3), (3, 3, 2)]:
        total = sum(
            num_matrices_of_rank(rows, cols, t, q) for t in range(min(rows, cols) + 1)
        )
        assert total == q ** (rows * cols)


def test_real_interval_arithmetic():
    a = RealInterval(Fraction(1, 2), Fraction(2, 3))
    b = RealInterval(Fraction(-1, 4), Fraction(1, 4))
    s = a + b
    assert s.lo == Fraction(1, 4) and s.hi == Fraction(11, 12)
    m = a * b
    # product endpoints come from all four corner products
    assert m.lo == Fraction(-1, 6) and m.hi == Fraction(1, 6)
    assert Fraction(1, 2) in a
    assert Fraction(1, 3) not in a


def test_real_interval_division_guards_zero():
    a = RealInterval.point(Fraction(1))
    z = RealInterval(Fraction(-1), Fraction(1))
    with pytest.raises(ZeroDivisionError):
        a / z


def test_real_interval_pow_int():
    a = RealInterval(Fraction(2), Fraction(3))
    p = a.pow_int(3)
    assert p.lo == 8 and p.hi == 27
    assert a.pow_int(0).lo == 1


def test_int_nth_root_exact_floor():
    for n in list(range(50)) + [10**12, 10**12 + 7, 2**80]:
        for k in (1, 2, 3, 5):
            r = int_nth_root(n, k)
            assert r**k <= n < (r + 1) ** k


def test_pow_fraction_interval_brackets_true_value():
    # 2^(3/2) = 2 * sqrt(2): compare squared endpoints against 8
    iv = pow_fraction_interval(2, Fraction(3, 2))
    assert iv.lo**2 <= 8 <= iv.hi**2
    assert iv.width < Fraction(1, 10**20)
    # integer exponents collapse to a point
    exact = pow_fraction_interval(3, Fraction(4))
    assert exact.lo == exact.hi == 81


def test_gamma_q_interval_contains_partial_products():
    for q in (2, 3, 4):
        iv = gamma_q_interval(q, Fraction(1, 10**6))
        assert iv.width <= Fraction(1, 10**6)
        # the infinite product exceeds any partial product
        partial = Fraction(1)
        for i in range(1, 40):
            partial /= 1 - Fraction(1, q**i)
        assert iv.hi >= partial
        assert iv.lo <= partial / (1 - Fraction(1, (q - 1) * q**39))


def test_gamma_q_interval_unreachable_width():
    with pytest.raises(PrecisionError):
        gamma_q_interval(2, Fraction(1, 10**9), max_terms=5)
