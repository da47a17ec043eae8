"""Parameter bundle for a sum-rank ambient space."""

from __future__ import annotations

from dataclasses import dataclass

from .qanalog import prime_power_decompose


@dataclass(frozen=True)
class CodeParams:
    """Ambient space F_{q^m}^n in matrix view: ell blocks of m x eta matrices over F_q.

    n = eta * ell, mu = min(m, eta); sum-rank weights live in [0, mu * ell].
    """

    q: int
    m: int
    eta: int
    ell: int

    def __post_init__(self):
        for name in ("q", "m", "eta", "ell"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        if self.q < 2:
            raise ValueError("q must be at least 2")
        prime_power_decompose(self.q)

    @property
    def n(self) -> int:
        return self.eta * self.ell

    @property
    def mu(self) -> int:
        return min(self.m, self.eta)

    @property
    def max_weight(self) -> int:
        return self.mu * self.ell

    @property
    def space_size(self) -> int:
        return self.q ** (self.m * self.n)

    def reshaped(self, ell_mode: int) -> "CodeParams":
        """Same coordinates regrouped into ell_mode blocks.

        Only the three metrics of interest are allowed: one block (rank
        metric), the native blocking, or n blocks (Hamming-like).
        """
        if ell_mode == self.ell:
            return self
        if ell_mode == 1:
            return CodeParams(self.q, self.m, self.n, 1)
        if ell_mode == self.n:
            return CodeParams(self.q, self.m, 1, self.n)
        raise ValueError(f"ell_mode must be one of 1, {self.ell}, {self.n}")
