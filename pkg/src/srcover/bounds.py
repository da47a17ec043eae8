"""Lower and upper bounds on the smallest code with a given covering radius.

All bounds return exact integers.  Lower bounds are rounded up (the target is
a cardinality); anything that passes through real arithmetic, like the
simplified sphere-covering bound, is evaluated in interval arithmetic and
rounded from the safe endpoint, so every returned value is certified.

The iterative bound consumes ball-intersection volumes.  Exact intersection
volumes depend on how the center's weight splits across blocks (see the
geometry module), so this module always takes the minimum over all block
splits of all center distances up to the cap; a guaranteed-overlap term may
only ever be understated, never overstated.

compile_report never raises on an individual bound: a bound that rejects its
inputs is recorded as inapplicable with the reason, and the best bracket is
taken over what remains.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import BudgetExceededError, PrecisionError
from .geometry import ball_volume, enumerate_bounded_compositions, intersection_volume
from .params import CodeParams
from .qanalog import RealInterval, binomial, gamma_q_interval, pow_fraction_interval
from .space import DEFAULT_ENUM_CAP

GAMMA_TARGET_WIDTH = Fraction(1, 10**12)

IntersectionOracle = Callable[[CodeParams, int, object], int]


@dataclass(frozen=True)
class BoundValue:
    name: str
    kind: str  # "lower" or "upper"
    value: int | None
    applicable: bool
    assumptions: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("lower", "upper"):
            raise ValueError(f"kind must be lower or upper, got {self.kind!r}")
        if self.applicable != (self.value is not None):
            raise ValueError("value must be present exactly when applicable")


@dataclass(frozen=True)
class BoundReport:
    params: CodeParams
    rho: int
    bounds: tuple[BoundValue, ...]
    best_lower: int
    best_upper: int
    best_lower_names: tuple[str, ...]
    best_upper_names: tuple[str, ...]


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _ceil_fraction(x: Fraction) -> int:
    return _ceil_div(x.numerator, x.denominator)


def _int_log(value: int, base: int) -> int:
    """Largest e with base**e <= value; -1 for value < 1."""
    if value < 1:
        return -1
    e = 0
    acc = base
    while acc <= value:
        e += 1
        acc *= base
    return e


def _require_radius(params: CodeParams, rho: int, *, strict_low: int = 0):
    if not strict_low < rho < params.max_weight:
        raise ValueError(
            f"radius {rho} outside ({strict_low}, {params.max_weight}) for {params}"
        )


def singleton_max_distance(params: CodeParams, k: int) -> int:
    """Largest minimum distance a dimension-k linear code can have.

    Evaluated as floor(mu*ell - (mu/eta)*k) + 1; the floor is valid because
    distances are integers.  Returned as the formula gives it, even at k = 0
    where it exceeds the largest weight.
    """
    if not 0 <= k <= params.n:
        raise ValueError(f"dimension {k} outside [0, {params.n}]")
    slack = Fraction(params.mu * params.ell) - Fraction(params.mu * k, params.eta)
    return int(slack.numerator // slack.denominator) + 1


def sphere_covering_lower(params: CodeParams, rho: int) -> int:
    """Space size over ball volume, rounded up."""
    _require_radius(params, rho)
    return _ceil_div(params.space_size, ball_volume(params, rho))


def simplified_sphere_covering_lower(
    params: CodeParams, rho: int, *, gamma_width: Fraction = GAMMA_TARGET_WIDTH
) -> int:
    """Closed-form relaxation of the sphere-covering bound.

    Needs rho > 1: the relaxation bounds the ball volume by rho times the
    largest sphere, which fails at radius one.  The q-power and the gamma
    constant are bracketed by intervals and the quotient is rounded up from
    its lower endpoint, so the result is always a true lower bound.
    """
    if not 1 < rho < params.max_weight:
        raise ValueError(
            f"radius {rho} outside (1, {params.max_weight}) for {params}"
        )
    q, m, eta, ell = params.q, params.m, params.eta, params.ell
    exponent = (
        Fraction(m * params.n)
        - rho * (Fraction(m + eta) - Fraction(rho, ell))
    )
    assert exponent >= 0
    numerator = pow_fraction_interval(q, exponent)
    denominator = RealInterval.point(
        rho * binomial(ell + rho - 1, ell - 1)
    ) * gamma_q_interval(q, gamma_width).pow_int(ell)
    value = numerator / denominator
    return max(1, _ceil_fraction(value.lo))


def minimum_three_lower(params: CodeParams, rho: int) -> int:
    """No two-word code can cover at any radius below the largest weight.

    Needs q^m >= 3: the argument scales the second word by a third field
    element, and with only two field elements the claim is simply false
    (over F_2 the pair {all-zero, all-ones} covers F_2^3 at radius 1).
    """
    _require_radius(params, rho)
    if params.q**params.m < 3:
        raise ValueError("two-element extension fields admit two-word coverings")
    return 3


def _distribution_min_intersections(
    params: CodeParams, rho: int, vol_i: IntersectionOracle
) -> list[int]:
    """Entry c: the smallest intersection volume over all center weights
    in [1, c] and all block splits of each weight.  Entry 0 is 0 (no
    overlap is guaranteed when no center qualifies)."""
    out = [0]
    running: int | None = None
    for total in range(1, params.max_weight + 1):
        vals = [
            vol_i(params, rho, comp)
            for comp in enumerate_bounded_compositions(total, params.ell, params.mu)
        ]
        assert vals, "every total up to mu*ell has a block split"
        low = min(vals)
        running = low if running is None else min(running, low)
        out.append(running)
        if running == 0:
            out.extend([0] * (params.max_weight - total))
            break
    return out


def iterative_bound_at(
    params: CodeParams,
    rho: int,
    k: int,
    vol_i: IntersectionOracle | None = None,
    *,
    enum_cap: int = DEFAULT_ENUM_CAP,
) -> int:
    """One rung of the packing-refinement lower bound, at fixed k.

    Only valid when k is at most the log (base q^m) of the true covering
    number; iterative_lower manages that protocol.  Restricted to eta <= m,
    where successive dimensions step the center-distance cap by exactly one.
    """
    if params.eta > params.m:
        raise ValueError("refinement bound needs eta <= m (integral distance steps)")
    _require_radius(params, rho)
    if not 1 <= k <= params.n:
        raise ValueError(f"dimension {k} outside [1, {params.n}]")
    if vol_i is None:
        vol_i = lambda p, tau, d: intersection_volume(p, tau, d, enum_cap=enum_cap)
    imins = _distribution_min_intersections(params, rho, vol_i)
    return _iterative_rhs(params, rho, k, imins)


def _iterative_rhs(params: CodeParams, rho: int, k: int, imins: list[int]) -> int:
    mu_ell = params.max_weight
    vb = ball_volume(params, rho)
    qm = params.q**params.m
    tail_cap = mu_ell - k
    tail = imins[tail_cap] if tail_cap >= 1 else 0
    den = vb - tail
    if den <= 0:
        # the guaranteed overlap swallows the whole ball: the inequality
        # degenerates and this rung carries no information
        return 1
    acc = params.space_size - qm**k * tail
    for kp in range(max(1, params.n - 2 * rho + 1), k + 1):
        acc += (qm**kp - qm ** (kp - 1)) * imins[mu_ell - kp + 1]
    return _ceil_div(acc, den)


def iterative_lower(
    params: CodeParams,
    rho: int,
    vol_i: IntersectionOracle | None = None,
    *,
    enum_cap: int = DEFAULT_ENUM_CAP,
) -> int:
    """Packing-refinement lower bound, iterated until the rung stabilizes.

    Each rung k is justified by an already-certified lower bound B: the rung
    is valid whenever q^{mk} <= true covering number, and B <= the true value
    guarantees that for k = floor(log_{q^m} B).  Starts from the plain
    sphere-covering bound and climbs; never evaluates an uncertified rung, so
    when even the starting bound sits below q^m the result is simply the
    sphere-covering bound.
    """
    if params.eta > params.m:
        raise ValueError("refinement bound needs eta <= m (integral distance steps)")
    _require_radius(params, rho)
    if vol_i is None:
        vol_i = lambda p, tau, d: intersection_volume(p, tau, d, enum_cap=enum_cap)
    imins = _distribution_min_intersections(params, rho, vol_i)
    best = sphere_covering_lower(params, rho)
    qm = params.q**params.m
    prev_k = None
    while True:
        k = _int_log(best, qm)
        if k < 1 or k == prev_k:
            return best
        prev_k = k
        best = max(best, _iterative_rhs(params, rho, k, imins))


def systematic_upper(params: CodeParams, rho: int) -> int:
    """Cardinality of a systematic code whose checks absorb the radius."""
    _require_radius(params, rho)
    return params.q ** (params.m * (params.n - rho))


def msrd_extension_upper(params: CodeParams, rho: int) -> int:
    """Field-extension construction on top of a distance-optimal code.

    The construction starts from a distance-optimal code over the reduced
    extension degree m - floor(rho/ell).  When that degree falls below eta
    the ingredient cannot exist (its required distance would beat the
    reduced field's own Singleton limit), so the bound is inapplicable
    whenever the floor is nonzero and eta exceeds the reduced degree; for
    rho < ell the value coincides with the systematic bound, which stands
    on its own.
    """
    if not 0 <= rho <= params.max_weight:
        raise ValueError(f"radius {rho} outside [0, {params.max_weight}]")
    drop = rho // params.ell
    reduced = params.m - drop
    if reduced < 1:
        raise ValueError(
            f"extension degree would drop to {reduced}; bound inapplicable"
        )
    if drop >= 1 and params.eta > reduced:
        raise ValueError(
            f"no distance-optimal ingredient over degree {reduced} with"
            f" block length {params.eta}; bound inapplicable"
        )
    return params.q ** (reduced * (params.n - rho))


def _best_segment_gain(
    params: CodeParams, rho: int, *, block_consistent: bool
) -> int | None:
    """Max total gain over segment sequences splitting (n, rho), or None.

    A segment (n1, r1) contributes floor(r1/ell)*(n1-r1) in the printed
    form.  The block_consistent variant only allows segments made of whole
    blocks and charges each with its own block count; it is strictly a
    side-by-side diagnostic.
    """
    n, rho_total, m, ell, eta, mu = (
        params.n,
        rho,
        params.m,
        params.ell,
        params.eta,
        params.mu,
    )
    NEG = None
    table: list[list[int | None]] = [
        [NEG] * (rho_total + 1) for _ in range(n + 1)
    ]
    table[0][0] = 0
    for rn in range(1, n + 1):
        for rr in range(0, rho_total + 1):
            best: int | None = NEG
            if block_consistent:
                seg_sizes = range(eta, rn + 1, eta)
            else:
                seg_sizes = range(1, rn + 1)
            for n1 in seg_sizes:
                if block_consistent:
                    ell1 = n1 // eta
                    r_hi = min(rr, mu * ell1)
                else:
                    r_hi = min(rr, n1)
                for r1 in range(0, r_hi + 1):
                    if block_consistent:
                        if m - r1 // ell1 < 1:
                            continue
                        gain = (r1 // ell1) * (n1 - r1)
                    else:
                        if n1 + r1 > m:
                            continue
                        gain = (r1 // ell) * (n1 - r1)
                    prev = table[rn - n1][rr - r1]
                    if prev is None:
                        continue
                    cand = prev + gain
                    if best is None or cand > best:
                        best = cand
            table[rn][rr] = best
    return table[n][rho_total]


def product_partition_upper(
    params: CodeParams, rho: int, *, block_consistent: bool = False
) -> int:
    """Concatenation of short covering codes, optimized over all splits."""
    _require_radius(params, rho)
    gain = _best_segment_gain(params, rho, block_consistent=block_consistent)
    if gain is None:
        raise ValueError(
            "no segment sequence satisfies the length and radius constraints"
        )
    return params.q ** (params.m * (params.n - rho) - gain)


def relation_bounds(
    params: CodeParams, rho: int, *, enum_cap: int = DEFAULT_ENUM_CAP
) -> tuple[BoundValue, BoundValue]:
    """Bracket from the one-block and all-blocks readings of the same space.

    Coarsening to a single block can only shrink the covering number and
    refining to single columns can only grow it, so the best lower bound of
    the one-block geometry and the best upper bound of the all-columns
    geometry bracket the native value.
    """
    _require_radius(params, rho)
    rank_view = params.reshaped(1)
    hamming_view = params.reshaped(params.n)

    lower_candidates: list[int] = []
    for fn in (
        lambda: sphere_covering_lower(rank_view, rho),
        lambda: simplified_sphere_covering_lower(rank_view, rho),
        lambda: minimum_three_lower(rank_view, rho),
        lambda: iterative_lower(rank_view, rho, enum_cap=enum_cap),
    ):
        try:
            lower_candidates.append(fn())
        except (ValueError, BudgetExceededError, PrecisionError):
            pass
    if lower_candidates:
        lower = BoundValue(
            "rank_relation",
            "lower",
            max(lower_candidates),
            True,
            ("one-block covering number is no larger",),
        )
    else:
        lower = BoundValue(
            "rank_relation",
            "lower",
            None,
            False,
            (
                f"radius {rho} reaches the one-block weight range"
                f" [0, {rank_view.max_weight}]; no constituent bound applies",
            ),
        )

    upper_candidates: list[int] = []
    for fn in (
        lambda: systematic_upper(hamming_view, rho),
        lambda: msrd_extension_upper(hamming_view, rho),
        lambda: product_partition_upper(hamming_view, rho),
    ):
        try:
            upper_candidates.append(fn())
        except (ValueError, BudgetExceededError, PrecisionError):
            pass
    assert upper_candidates, "the systematic bound always applies here"
    upper = BoundValue(
        "hamming_relation",
        "upper",
        min(upper_candidates),
        True,
        ("per-column covering number is no smaller",),
    )
    return lower, upper


def compile_report(
    params: CodeParams, rho: int, *, enum_cap: int = DEFAULT_ENUM_CAP
) -> BoundReport:
    """Evaluate every bound, mark the inapplicable ones, take the bracket."""
    if not 0 <= rho <= params.max_weight:
        raise ValueError(f"radius {rho} outside [0, {params.max_weight}]")
    if rho == 0 or rho == params.max_weight:
        value = params.space_size if rho == 0 else 1
        reason = (
            "radius zero forces the whole space"
            if rho == 0
            else "one center reaches everything at full radius"
        )
        pair = (
            BoundValue("trivial_extreme", "lower", value, True, (reason,)),
            BoundValue("trivial_extreme", "upper", value, True, (reason,)),
        )
        return BoundReport(
            params,
            rho,
            pair,
            value,
            value,
            ("trivial_extreme",),
            ("trivial_extreme",),
        )

    entries: list[BoundValue] = []

    def attempt(name: str, kind: str, fn, assumptions: tuple[str, ...] = ()):
        try:
            entries.append(BoundValue(name, kind, fn(), True, assumptions))
        except (ValueError, BudgetExceededError, PrecisionError) as exc:
            entries.append(BoundValue(name, kind, None, False, (str(exc),)))

    attempt("sphere_covering", "lower", lambda: sphere_covering_lower(params, rho))
    attempt(
        "simplified_sphere_covering",
        "lower",
        lambda: simplified_sphere_covering_lower(params, rho),
    )
    attempt("minimum_three", "lower", lambda: minimum_three_lower(params, rho))
    attempt(
        "iterative",
        "lower",
        lambda: iterative_lower(params, rho, enum_cap=enum_cap),
    )
    rel_lower, rel_upper = relation_bounds(params, rho, enum_cap=enum_cap)
    entries.append(rel_lower)
    attempt("systematic", "upper", lambda: systematic_upper(params, rho))
    attempt("msrd_extension", "upper", lambda: msrd_extension_upper(params, rho))
    attempt(
        "product_partition",
        "upper",
        lambda: product_partition_upper(params, rho),
    )
    entries.append(rel_upper)

    lowers = [b for b in entries if b.kind == "lower" and b.applicable]
    uppers = [b for b in entries if b.kind == "upper" and b.applicable]
    assert lowers and uppers
    best_lower = max(b.value for b in lowers)
    best_upper = min(b.value for b in uppers)
    assert best_lower <= best_upper, (
        f"bound bracket inverted at {params}, rho={rho}:"
        f" {best_lower} > {best_upper}"
    )
    return BoundReport(
        params,
        rho,
        tuple(entries),
        best_lower,
        best_upper,
        tuple(b.name for b in lowers if b.value == best_lower),
        tuple(b.name for b in uppers if b.value == best_upper),
    )
