"""Gamma/Beta machinery and closed-form moment sequences of the two weights.

All moments flow through ``log_gamma`` and are exponentiated once at the end,
so intermediate Gamma values never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.special import gammaln

from .core import WeightSpec


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if x <= 0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return float(gammaln(x))


def pochhammer(a: float, m: int) -> float:
    """Rising factorial a (a+1) ... (a+m-1); 1 for m = 0."""
    if m < 0:
        raise ValueError("pochhammer order must be >= 0")
    out = 1.0
    for i in range(m):
        out *= a + i
    return out


def hermite_moment(s: int, lam: float) -> float:
    """Integral of x^(2s) |x|^(2 lam) exp(-x^2) over R, i.e. Gamma(s + lam + 1/2)."""
    if s < 0:
        raise ValueError("moment order must be >= 0")
    return math.exp(log_gamma(s + lam + 0.5))


def gegenbauer_moment(s: int, lam: float, mu: float) -> float:
    """Integral of x^(2s) |x|^(2 lam) (1-x^2)^(mu-1/2) over [-1,1].

    Equals B(s + lam + 1/2, mu + 1/2), computed as a log-Gamma difference.
    """
    if s < 0:
        raise ValueError("moment order must be >= 0")
    return math.exp(log_gamma(s + lam + 0.5) + log_gamma(mu + 0.5) - log_gamma(lam + mu + s + 1.0))


@dataclass(frozen=True)
class MomentTable:
    """Even power moments of a weight; odd entries are exactly zero.

    With ``normalized=True`` all entries are divided by the zeroth moment,
    which is harmless for Rayleigh quotients and pencil roots and improves
    Hankel conditioning.
    """

    weight: WeightSpec
    values: tuple[float, ...]
    normalized: bool = False

    @property
    def max_order(self) -> int:
        return len(self.values) - 1

    def moment(self, k: int) -> float:
        if not 0 <= k <= self.max_order:
            raise IndexError(f"moment order {k} outside table capacity {self.max_order}")
        return self.values[k]


# Tables are immutable, so sharing cached instances across callers (and threads) is safe.
@lru_cache(maxsize=512)
def moment_table(weight: WeightSpec, max_order: int, normalized: bool = False) -> MomentTable:
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    values = []
    for k in range(max_order + 1):
        if k % 2:
            values.append(0.0)
        elif weight.is_gegenbauer:
            values.append(gegenbauer_moment(k // 2, weight.lam, weight.mu))
        else:
            values.append(hermite_moment(k // 2, weight.lam))
    if normalized:
        scale = values[0]
        values = [v / scale for v in values]
    return MomentTable(weight, tuple(values), normalized)
