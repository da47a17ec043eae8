"""Finite fields F_{p^s} and their extensions, with dense op tables.

Field elements are integers in [0, q): the base-p digits of the integer are
the coefficients of the polynomial representative, lowest degree first.  With
that encoding, addition is digit-wise mod p, so for p = 2 it is XOR on the
whole integer.  Fields with q <= 256 expose numpy add/sub/mul/inv tables for
the array kernels.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .qanalog import is_prime, prime_power_decompose

TABLE_LIMIT = 256
ORDER_LIMIT = 1 << 16


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num by monic den, coefficients mod p."""
    num = _poly_trim(list(num))
    dd = len(den) - 1
    inv_lead = pow(den[-1], -1, p)
    while len(num) - 1 >= dd:
        shift = len(num) - 1 - dd
        factor = num[-1] * inv_lead % p
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * c) % p
        _poly_trim(num)
    return num


def _poly_is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree 1..deg/2 over F_p."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for packed in range(p**d):
            den = [(packed // p**i) % p for i in range(d)] + [1]
            if not _poly_trim(_poly_mod(poly, den, p)):
                return False
    return True


def _lowest_irreducible(p: int, s: int) -> tuple[int, ...]:
    """Monic irreducible of degree s over F_p with the smallest packed tail.

    The s non-leading coefficients are read as a base-p integer (constant term
    least significant); candidates are scanned in increasing packed order.
    """
    if s == 1:
        return (0, 1)  # the polynomial x
    for packed in range(p**s):
        tail = [(packed // p**i) % p for i in range(s)]
        cand = tail + [1]
        if _poly_is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError(f"no irreducible of degree {s} over F_{p}")


class FiniteField:
    """Arithmetic in F_q, q = p**s <= 2**16."""

    def __init__(self, q: int):
        p, s = prime_power_decompose(q)
        if q > ORDER_LIMIT:
            raise ValueError(f"field order {q} exceeds the {ORDER_LIMIT} cap")
        self.q = q
        self.p = p
        self.s = s
        self.modulus = _lowest_irreducible(p, s)
        self._tables_built = False
        if q <= TABLE_LIMIT:
            self._build_tables()

    # -- element <-> digit vector ------------------------------------

    def digits(self, a: int) -> list[int]:
        p = self.p
        return [(a // p**i) % p for i in range(self.s)]

    def from_digits(self, ds) -> int:
        p = self.p
        return sum(int(d) % p * p**i for i, d in enumerate(ds))

    # -- scalar ops --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        out = 0
        pw = 1
        for _ in range(self.s):
            out += ((a + b) % p) * pw
            a //= p
            b //= p
            pw *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        out = 0
        pw = 1
        for _ in range(self.s):
            out += (-a % p) * pw
            a //= p
            pw *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.s == 1:
            return a * b % self.p
        prod = [0] * (2 * self.s - 1)
        da, db = self.digits(a), self.digits(b)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        rem = _poly_mod(prod, list(self.modulus), self.p)
        return self.from_digits(rem)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.s == 1:
            return pow(a, -1, self.p)
        # a ** (q - 2) by square and multiply
        result, base, e = 1, a, self.q - 2
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- dense tables ------------------------------------------------

    def _build_tables(self):
        q = self.q
        grid = np.arange(q)
        if self.p == 2:
            self.add_table = (grid[:, None] ^ grid[None, :]).astype(np.uint8)
            self.sub_table = self.add_table
            self.neg_table = grid.astype(np.uint8)
        else:
            add = np.zeros((q, q), np.uint8)
            for a in range(q):
                for b in range(q):
                    add[a, b] = self.add(a, b)
            self.add_table = add
            neg = np.array([self.neg(a) for a in range(q)], np.uint8)
            self.neg_table = neg
            self.sub_table = add[:, neg]
        mul = np.zeros((q, q), np.uint8)
        for a in range(q):
            for b in range(a, q):
                v = self.mul(a, b)
                mul[a, b] = v
                mul[b, a] = v
        self.mul_table = mul
        inv = np.zeros(q, np.uint8)
        for a in range(1, q):
            inv[a] = self.inv(a)
        self.inv_table = inv
        self._tables_built = True

    @property
    def has_tables(self) -> bool:
        return self._tables_built

    def __repr__(self):
        return f"FiniteField({self.q})"


def build_field(p: int, s: int) -> FiniteField:
    """Field of order p**s from an explicit prime and exponent.

    Unlike get_field, which accepts any prime power and factors it, this
    entry point insists that p itself is the characteristic, so build_field(4, 1)
    is an error rather than an alias for F_4.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if s < 1:
        raise ValueError("extension exponent must be at least 1")
    if p**s > ORDER_LIMIT:
        raise ValueError(f"field order {p**s} exceeds the {ORDER_LIMIT} cap")
    return get_field(p**s)


@lru_cache(maxsize=None)
def get_field(q: int) -> FiniteField:
    return FiniteField(q)


class ExtensionField:
    """F_{q^m} as polynomials of degree < m over a base FiniteField.

    Elements are m-tuples of base-field integers, lowest degree first; the
    tuple doubles as the column representation of the element over the base
    field, which is what the matrix view of a vector stores.
    """

    def __init__(self, base: FiniteField, degree: int):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        self.base = base
        self.degree = degree
        self.order = base.q**degree
        self.modulus = self._find_modulus()
        self.zero = (0,) * degree
        self.one = ((1,) + (0,) * (degree - 1)) if degree > 1 else (1,)

    def _find_modulus(self) -> tuple[int, ...]:
        """Smallest monic irreducible of the right degree over the base field."""
        q, deg = self.base.q, self.degree
        if deg == 1:
            return (0, 1)
        for packed in range(q**deg):
            tail = [(packed // q**i) % q for i in range(deg)]
            cand = tail + [1]
            if self._irreducible(cand):
                return tuple(cand)
        raise AssertionError("no irreducible modulus found")

    def _irreducible(self, poly: list[int]) -> bool:
        deg = len(poly) - 1
        q = self.base.q
        for d in range(1, deg // 2 + 1):
            for packed in range(q**d):
                den = [(packed // q**i) % q for i in range(d)] + [1]
                if not self._poly_mod(list(poly), den):
                    return False
        return True

    def _poly_mod(self, num: list[int], den: list[int]) -> list[int]:
        f = self.base
        dd = len(den) - 1
        inv_lead = f.inv(den[-1])
        def trim(c):
            while c and c[-1] == 0:
                c.pop()
            return c
        trim(num)
        while len(num) - 1 >= dd and num:
            shift = len(num) - 1 - dd
            factor = f.mul(num[-1], inv_lead)
            for i, c in enumerate(den):
                num[shift + i] = f.sub(num[shift + i], f.mul(factor, c))
            trim(num)
        return num

    def elements(self):
        q, deg = self.base.q, self.degree
        for packed in range(self.order):
            yield tuple((packed // q**i) % q for i in range(deg))

    def add(self, a, b):
        f = self.base
        return tuple(f.add(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        f = self.base
        prod = [0] * (2 * self.degree - 1) if self.degree > 1 else [0]
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = f.add(prod[i + j], f.mul(x, y))
        rem = self._poly_mod(prod, list(self.modulus))
        rem += [0] * (self.degree - len(rem))
        return tuple(rem[: self.degree])

    def scalar_from_int(self, packed: int):
        q = self.base.q
        return tuple((packed // q**i) % q for i in range(self.degree))
