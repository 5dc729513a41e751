"""Signed log-domain scalars and combinatorial primitives.

Correlators and bounds in this package involve magnitudes like (100!)^2,
far outside double range, so every quantity that can get large lives in
the natural-log domain.  A signed magnitude is a (sign, log|x|) pair; a
complex one is a (log|z|, phase) pair.  Conversions to base 2 or 10 happen
only at presentation boundaries.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

NEG_INF = float("-inf")

# Mixed-sign exp-sums whose float total lands this close to the largest
# contribution's rounding floor are indistinguishable from exact
# cancellation; they snap to the canonical zero.
_CANCEL_ULPS = 2.0**-52


class ConvergenceError(RuntimeError):
    """An adaptive truncation or iteration exhausted its budget."""


@dataclass(frozen=True)
class LogScalar:
    """A real number stored as sign and natural log of the magnitude."""

    sign: int
    log_magnitude: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign}")
        if (self.sign == 0) != (self.log_magnitude == NEG_INF):
            raise ValueError("sign 0 and log_magnitude -inf must coincide")

    @classmethod
    def zero(cls) -> "LogScalar":
        return cls(0, NEG_INF)

    @classmethod
    def one(cls) -> "LogScalar":
        return cls(1, 0.0)

    @classmethod
    def from_real(cls, x: float) -> "LogScalar":
        if x == 0.0:
            return cls.zero()
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_log(cls, sign: int, log_magnitude: float) -> "LogScalar":
        if sign == 0 or log_magnitude == NEG_INF:
            return cls.zero()
        return cls(sign, log_magnitude)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def to_real(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    def __mul__(self, other: "LogScalar") -> "LogScalar":
        if self.sign == 0 or other.sign == 0:
            return LogScalar.zero()
        return LogScalar(self.sign * other.sign,
                         self.log_magnitude + other.log_magnitude)

    def __neg__(self) -> "LogScalar":
        return LogScalar(-self.sign, self.log_magnitude)

    def __add__(self, other: "LogScalar") -> "LogScalar":
        return log_sum_exp_signed((self, other))


@dataclass(frozen=True)
class LogComplex:
    """A complex number stored as log of the modulus and a phase in (-pi, pi]."""

    log_magnitude: float
    phase: float

    @classmethod
    def zero(cls) -> "LogComplex":
        return cls(NEG_INF, 0.0)

    @classmethod
    def from_complex(cls, z: complex) -> "LogComplex":
        if z == 0:
            return cls.zero()
        return cls(math.log(abs(z)), _wrap_phase(cmath.phase(z)))

    @property
    def is_zero(self) -> bool:
        return self.log_magnitude == NEG_INF

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        return cmath.rect(math.exp(self.log_magnitude), self.phase)

    def squared_modulus(self) -> LogScalar:
        """|z|^2 as a signed log scalar; doubles the log magnitude, drops the phase."""
        if self.is_zero:
            return LogScalar.zero()
        return LogScalar(1, 2.0 * self.log_magnitude)

    def _shift(self, delta_log: float) -> "LogComplex":
        """Rescale the modulus by exp(delta_log), keeping the phase."""
        if self.is_zero:
            return self
        return LogComplex(self.log_magnitude + delta_log, self.phase)


def _wrap_phase(phi: float) -> float:
    # atan2 returns [-pi, pi]; fold the open end onto +pi
    if phi <= -math.pi:
        return phi + 2.0 * math.pi
    return phi


_LOG_FACT = [0.0]  # _LOG_FACT[n] = ln(n!) by cumulative summation


def log_factorial(n: int) -> float:
    """ln(n!) from a lazily grown cumulative table (no Stirling in range)."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    while len(_LOG_FACT) <= n:
        k = len(_LOG_FACT)
        _LOG_FACT.append(_LOG_FACT[k - 1] + math.log(k))
    return _LOG_FACT[n]


def log_binomial(n: int, k: int) -> float:
    """ln C(n, k); rejects k outside [0, n]."""
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    # fixed operand order keeps the n-k <-> k symmetry bit-exact
    small = min(k, n - k)
    return log_factorial(n) - log_factorial(small) - log_factorial(n - small)


def log_sum_exp_signed(terms: Iterable[LogScalar]) -> LogScalar:
    """Signed sum of log-domain scalars, factoring out the largest magnitude.

    Exact or noise-floor cancellation (total within a couple of ulps of the
    factored-out maximum, times the term count) returns the canonical zero.
    """
    live: Sequence[LogScalar] = [t for t in terms if t.sign != 0]
    if not live:
        return LogScalar.zero()
    m = max(t.log_magnitude for t in live)
    if m == NEG_INF:
        return LogScalar.zero()
    total = math.fsum(t.sign * math.exp(t.log_magnitude - m) for t in live)
    if abs(total) <= len(live) * _CANCEL_ULPS:
        return LogScalar.zero()
    return LogScalar(1 if total > 0 else -1, m + math.log(abs(total)))
