"""Bell correlators, local-realistic bounds, and classification.

The collective correlator of order m is |<J_+^m>|^2.  A local-hidden-variable
model caps it at (N!/(N-m)!)^2 2^-m: each of the m measured parties
contributes a factor of modulus 1/sqrt(2) and the permutation count
N!/(N-m)! enters squared.  The entanglement threshold replaces 2^-m by
4^-m with the same permutation scaling; that scaling is the one consistent
with translating the per-qubit thresholds to collective correlators, and is
recorded here as an explicit modeling choice (see CorrelatorReport).
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

from .dicke import DickeVector, expectation_j_plus_power
from .numerics import NEG_INF, LogScalar, log_factorial

_LN2 = math.log(2.0)


class CrossRegionVerdict(str, enum.Enum):
    GENUINE = "genuine cross-region"
    LOCAL_ORIGIN = "local-origin"
    NO_VIOLATION = "no violation"


@dataclass(frozen=True)
class CorrelatorReport:
    """A correlator value against its classical and entanglement thresholds.

    log_ratio = log_correlator - log_bound; a Bell violation requires a
    strictly positive correlator above the bound.  The entanglement flag
    compares against the bound shifted by -(total order) * ln 2, i.e. the
    4^-m per-party threshold scaled by the same permutation count as the
    Bell bound.
    """

    order_m: int
    log_correlator: LogScalar
    log_bound: float
    log_ratio: float
    violates_bell: bool
    violates_entanglement_threshold: bool

    @classmethod
    def from_parts(cls, order_m: int, log_correlator: LogScalar,
                   log_bound: float, log_entanglement_bound: float) -> "CorrelatorReport":
        positive = log_correlator.sign > 0
        log_ratio = (log_correlator.log_magnitude - log_bound
                     if positive else NEG_INF)
        return cls(
            order_m=order_m,
            log_correlator=log_correlator,
            log_bound=log_bound,
            log_ratio=log_ratio,
            violates_bell=positive and log_ratio > 0.0,
            violates_entanglement_threshold=(
                positive
                and log_correlator.log_magnitude > log_entanglement_bound),
        )


@dataclass(frozen=True)
class PauliWord:
    """An ordered product of X/Y collective operators with a unit-modulus weight."""

    letters: str
    coefficient: complex

    def __post_init__(self):
        if not set(self.letters) <= {"X", "Y"}:
            raise ValueError(f"letters must be X or Y, got {self.letters!r}")


def bound_single_log(n_parties: int, order: int) -> float:
    """ln of the single-region bound (N!/(N-m)!)^2 2^-m."""
    if not 0 <= order <= n_parties:
        raise ValueError(f"need 0 <= m <= N, got m={order}, N={n_parties}")
    return (2.0 * (log_factorial(n_parties) - log_factorial(n_parties - order))
            - order * _LN2)


def bound_two_region_log(n_a: int, n_b: int, order_a: int, order_b: int) -> float:
    """ln of the two-region bound; orders may not exceed their region counts."""
    if order_a > n_a or order_b > n_b or min(order_a, order_b) < 0:
        raise ValueError(
            f"orders (m={order_a}, k={order_b}) must fit regions "
            f"(N_A={n_a}, N_B={n_b})")
    return (2.0 * (log_factorial(n_a) - log_factorial(n_a - order_a))
            + 2.0 * (log_factorial(n_b) - log_factorial(n_b - order_b))
            - (order_a + order_b) * _LN2)


def entanglement_bound_single_log(n_parties: int, order: int) -> float:
    """Bell bound with 4^-m in place of 2^-m (same permutation scaling)."""
    return bound_single_log(n_parties, order) - order * _LN2


def correlator_single(state: DickeVector, order: int) -> CorrelatorReport:
    """|<J_+^m>|^2 on a normalized state, classified against its bounds."""
    n = state.n_particles
    if order > n:
        raise ValueError(f"order {order} exceeds particle count {n}")
    value = expectation_j_plus_power(state, order).squared_modulus()
    return CorrelatorReport.from_parts(
        order, value,
        bound_single_log(n, order),
        entanglement_bound_single_log(n, order))


def ghz_addressable_correlator(n_qubits: int, order: int) -> float:
    """Correlator of individually addressed qubits in a GHZ state: 1/4 at m=N, else 0."""
    if not 1 <= order <= n_qubits:
        raise ValueError(f"need 1 <= m <= N, got m={order}, N={n_qubits}")
    return 0.25 if order == n_qubits else 0.0


def ghz_plus_single_correlator(n_ghz: int) -> CorrelatorReport:
    """Two-region correlator for (GHZ of N qubits) x (single qubit in |+>).

    The value (N!)^2 2^-4 beats the two-region bound (N!)^2 2^-(N+1) for
    N > 3 even though region B is uncorrelated with A; the violation is of
    local origin, which is what cross_region_guard is for.
    """
    if n_ghz < 1:
        raise ValueError("need N >= 1")
    value = LogScalar(1, 2.0 * log_factorial(n_ghz) - 4.0 * _LN2)
    bound = bound_two_region_log(n_ghz, 1, n_ghz, 1)
    return CorrelatorReport.from_parts(n_ghz, value, bound, bound - (n_ghz + 1) * _LN2)


def cross_region_guard(report_a: CorrelatorReport, report_b: CorrelatorReport,
                       report_ab: CorrelatorReport) -> CrossRegionVerdict:
    """Attribute a two-region violation to cross-region or single-region physics."""
    if not report_ab.violates_bell:
        return CrossRegionVerdict.NO_VIOLATION
    if report_a.violates_bell or report_b.violates_bell:
        return CrossRegionVerdict.LOCAL_ORIGIN
    return CrossRegionVerdict.GENUINE


def expand_plus_power(order: int) -> list[PauliWord]:
    """All 2^m ordered X/Y words of J_+^m = prod (Jx + i Jy), weight i^(#Y).

    Letter order is preserved (the collective operators do not commute);
    summing word expectations times coefficients reconstructs <J_+^m>.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    words = []
    for combo in itertools.product("XY", repeat=order):
        n_y = combo.count("Y")
        words.append(PauliWord("".join(combo), 1j ** n_y))
    return words
