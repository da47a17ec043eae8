"""Exact q-analog combinatorics on arbitrary-precision integers.

Everything here returns plain Python ints or Fraction-based intervals, so
counts like q**(m*n) never pass through floating point.  Divisions inside the
q-binomial products are asserted exact at every prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from .errors import PrecisionError

GAMMA_MAX_TERMS = 20_000


def checked_sub(a: int, b: int) -> int:
    """a - b for counts; asserts the result stays nonnegative."""
    assert a >= b, f"count subtraction went negative: {a} - {b}"
    return a - b


def exact_div(a: int, b: int) -> int:
    """a / b, asserting divisibility."""
    q, r = divmod(a, b)
    assert r == 0, f"inexact division: {a} / {b}"
    return q


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power_decompose(q: int) -> tuple[int, int]:
    """Write q = p**s with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    for p in range(2, isqrt(q) + 1):
        if q % p == 0:
            s = 0
            rest = q
            while rest % p == 0:
                rest //= p
                s += 1
            if rest != 1 or not is_prime(p):
                raise ValueError(f"{q} is not a prime power")
            return p, s
    # q itself is prime
    return q, 1


def power(base: int, exp: int) -> int:
    """Exact base ** exp for integer base >= 2 and exponent >= 0."""
    if base < 2:
        raise ValueError("base must be at least 2")
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return base**exp


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n or n < 0:
        return 0
    return comb(n, k)


def gaussian_binomial(n: int, t: int, q: int) -> int:
    """Number of t-dimensional subspaces of an n-dimensional space over F_q.

    Computed as the interleaved product prod_{i=1..t} (q^(n-t+i)-1)/(q^i-1);
    each prefix is itself a q-binomial, so every division is exact (asserted).
    """
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    if t < 0 or t > n:
        return 0
    value = 1
    for i in range(1, t + 1):
        value = exact_div(value * (q ** (n - t + i) - 1), q**i - 1)
    return value


def num_matrices_of_rank(rows: int, cols: int, t: int, q: int) -> int:
    """Number of rows x cols matrices over F_q of rank exactly t."""
    if rows < 0 or cols < 0:
        raise ValueError("matrix dimensions must be nonnegative")
    if t < 0 or t > min(rows, cols):
        return 0
    value = gaussian_binomial(cols, t, q)
    for i in range(t):
        value *= q**rows - q**i
    return value


@dataclass(frozen=True)
class RealInterval:
    """Closed interval with exact rational endpoints.

    Endpoint arithmetic is exact, so every operation below preserves
    containment without explicit outward rounding.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval: [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "RealInterval":
        f = Fraction(x)
        return cls(f, f)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        f = Fraction(x)
        return self.lo <= f <= self.hi

    def __add__(self, other: "RealInterval") -> "RealInterval":
        return RealInterval(self.lo + other.lo, self.hi + other.hi)

    def __mul__(self, other: "RealInterval") -> "RealInterval":
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RealInterval(min(products), max(products))

    def __truediv__(self, other: "RealInterval") -> "RealInterval":
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        return self * RealInterval(1 / other.hi, 1 / other.lo)

    def pow_int(self, k: int) -> "RealInterval":
        if k < 0:
            raise ValueError("negative powers unsupported")
        out = RealInterval.point(1)
        for _ in range(k):
            out = out * self
        return out


def int_nth_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for nonnegative n and k >= 1, exactly."""
    if n < 0 or k < 1:
        raise ValueError("int_nth_root needs n >= 0, k >= 1")
    if n < 2 or k == 1:
        return n
    # Newton iteration on integers, seeded from the float guess.
    x = max(1, int(round(n ** (1.0 / k))))
    while True:
        xk = x**k
        if xk <= n < (x + 1) ** k:
            return x
        x = ((k - 1) * x + n // x ** (k - 1)) // k
        if x < 1:
            x = 1


def pow_fraction_interval(base: int, exponent: Fraction, digits: int = 30) -> RealInterval:
    """Certified enclosure of base ** exponent for integer base >= 1, exponent >= 0.

    The integer part of the exponent is exact; the fractional part c/b is
    bracketed via the integer b-th root of base**c scaled by 10**digits.
    """
    if base < 1:
        raise ValueError("base must be positive")
    if exponent < 0:
        raise ValueError("exponent must be nonnegative")
    whole, frac = divmod(exponent, 1)
    head = Fraction(base ** int(whole))
    if frac == 0:
        return RealInterval(head, head)
    c, b = frac.numerator, frac.denominator
    scale = 10**digits
    root = int_nth_root(base**c * scale**b, b)
    return RealInterval(head * Fraction(root, scale), head * Fraction(root + 1, scale))


def gamma_q_interval(q: int, target_width, max_terms: int = GAMMA_MAX_TERMS) -> RealInterval:
    """Enclosure of the limit prod_{i>=1} (1 - q**-i)**-1.

    The partial product P_N increases to the limit, giving the lower endpoint.
    For the upper endpoint, the dropped factors satisfy
    prod_{i>N} (1 - q**-i) >= 1 - sum_{i>N} q**-i = 1 - q**-N/(q-1),
    so the limit is at most P_N / (1 - q**-N/(q-1)).
    """
    prime_power_decompose(q)
    width = Fraction(target_width)
    if width <= 0:
        raise ValueError("target width must be positive")
    partial = Fraction(1)
    q_pow = 1
    for i in range(1, max_terms + 1):
        q_pow *= q
        partial *= Fraction(q_pow, q_pow - 1)
        tail = Fraction(1, (q - 1) * q_pow)  # sum of q**-j for j > i
        if tail < 1:
            hi = partial / (1 - tail)
            if hi - partial <= width:
                return RealInterval(partial, hi)
    raise PrecisionError(
        f"gamma interval for q={q} did not reach width {target_width} "
        f"within {max_terms} terms"
    )
