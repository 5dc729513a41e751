"""Four-mode pair-production (SPDC-type) states and their Bell correlators.

A pair source populates two regions A and B with perfectly anticorrelated
bosonic qubits.  Writing n (m) for the number of up (down) qubits in A, the
state is sum_{n,m} c_n c_m |n,m>_A |m,n>_B with c_n = (-i tanh t)^n / cosh t,
t the dimensionless squeezing time.  Per-region particle number N follows
p_N = (N+1) tanh^{2N}(t) / cosh^4(t).

Because the paired operator J_+^(A)m J_-^(B)m conserves N in each region,
the pure state is equivalent to the incoherent mixture of its fixed-N
sectors; the Bell bound for the full state therefore carries the
number-fluctuation factor f_mk = sum_N p_N (N!/(N-m)! N!/(N-k)!)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bell import CorrelatorReport
from .dicke import j_plus_matrix
from .numerics import (ConvergenceError, LogComplex, LogScalar, log_factorial,
                       log_sum_exp_signed)

_LN2 = math.log(2.0)


@dataclass(frozen=True, eq=False)
class PairDistribution:
    """Truncated per-region pair-number distribution with an analytic tail bound."""

    t: float
    max_n: int
    probabilities: np.ndarray
    tail_bound: float

    def __post_init__(self):
        p = np.array(self.probabilities, dtype=float)
        if p.shape != (self.max_n + 1,):
            raise ValueError("probabilities must cover N = 0 .. max_n")
        p.flags.writeable = False
        object.__setattr__(self, "probabilities", p)


@dataclass(frozen=True, eq=False)
class FixedNTwoRegionState:
    """Paired two-region state sum_n a_n |n, N-n>_A |N-n, n>_B, N per region."""

    n_per_region: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (self.n_per_region + 1,):
            raise ValueError(
                f"amplitude array must have length N+1={self.n_per_region + 1}")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > 1e-12:
            raise ValueError(f"state must be normalized, got |psi|^2={norm_sq!r}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)


def log_pair_probability(t: float, n_pairs: int) -> float:
    """ln p_N for N pairs per region at squeezing time t."""
    if t < 0 or n_pairs < 0:
        raise ValueError("need t >= 0 and N >= 0")
    log_cosh = math.log(math.cosh(t))
    if n_pairs == 0:
        return -4.0 * log_cosh
    if t == 0.0:
        return float("-inf")
    return (2.0 * n_pairs * math.log(math.tanh(t)) - 4.0 * log_cosh
            + math.log(n_pairs + 1.0))


def pair_probability(t: float, n_pairs: int) -> float:
    """p_N = (N+1) tanh^2N(t) / cosh^4(t), evaluated in log domain."""
    return math.exp(log_pair_probability(t, n_pairs))


def _tail_probability(t: float, max_n: int) -> float:
    """Closed-form sum of p_N over N > max_n (derivative of the geometric series)."""
    x = math.tanh(t) ** 2
    if x == 0.0:
        return 0.0
    # sum_{N>M} (N+1) x^N = x^(M+1) ((M+2) - (M+1) x) / (1-x)^2, and
    # cosh^-4 t = (1-x)^2 cancels the denominator exactly
    return x ** (max_n + 1) * ((max_n + 2) - (max_n + 1) * x)


def build_distribution(t: float, epsilon: float) -> PairDistribution:
    """Truncate p_N so the analytic tail is at most epsilon."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must be in (0, 1)")
    if t < 0:
        raise ValueError("t must be nonnegative")
    max_n = 0
    while _tail_probability(t, max_n) > epsilon:
        max_n += 1
        if max_n > 10_000_000:
            raise ConvergenceError("pair distribution truncation ran away")
    probs = np.array([pair_probability(t, n) for n in range(max_n + 1)])
    return PairDistribution(t, max_n, probs, _tail_probability(t, max_n))


def analytic_full_correlator(t: float, order: int) -> LogScalar:
    """Full-state correlator (sinh t cosh t)^(4m) (m!)^4 in log domain."""
    if t < 0 or order < 1:
        raise ValueError("need t >= 0 and m >= 1")
    if t == 0.0:
        return LogScalar.zero()
    return LogScalar(1, 4.0 * order * (math.log(math.sinh(t)) + math.log(math.cosh(t)))
                     + 4.0 * log_factorial(order))


def _pair_coefficients(t: float, n_max: int) -> np.ndarray:
    """c_n = (-i tanh t)^n / cosh t for n = 0 .. n_max."""
    n = np.arange(n_max + 1)
    return (-1j * math.tanh(t)) ** n / math.cosh(t)


def _shift_weights(order: int, n_max: int) -> np.ndarray:
    """(n+m)!/n! for n = 0 .. n_max, the squared paired matrix element factor."""
    n = np.arange(n_max + 1, dtype=float)
    w = np.ones(n_max + 1)
    for j in range(order):
        w *= n + j + 1
    return w


def full_state_expectation(t: float, order: int, n_max: int,
                           by_sector: bool = False) -> complex:
    """<J_+^(A)m J_-^(B)m> on the pure state truncated at n_max.

    Writing the occupation grid as (n, k) with n up-qubits and k down-qubits
    in A, the paired operator shifts (n, k) -> (n+m, k-m) with matrix-element
    product [(n+m)!/n!][k!/(k-m)!].  With by_sector the double sum is
    restricted to complete fixed-N sectors n + k <= n_max, the grouping the
    superselection argument compares against.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    c = _pair_coefficients(t, n_max + order)
    up = np.arange(n_max + 1)
    col_a = np.conj(c[up + order]) * _shift_weights(order, n_max) * c[up]
    down = np.arange(order, n_max + 1)
    w_down = np.ones(down.size)
    for j in range(order):
        w_down *= down - j
    col_b = np.conj(c[down - order]) * w_down * c[down]
    if not by_sector:
        return complex(col_a.sum() * col_b.sum())
    contrib = np.outer(col_a, col_b)
    sector = np.add.outer(up, down)
    return complex(contrib[sector <= n_max].sum())


def numeric_full_correlator(t: float, order: int, tol: float = 1e-10) -> LogScalar:
    """|<J_+^(A)m J_-^(B)m>|^2 by adaptive truncation of the double sum."""
    if t < 0 or order < 1:
        raise ValueError("need t >= 0 and m >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if t == 0.0:
        return LogScalar.zero()
    n_max = max(16, 4 * order, int(8 * math.sinh(t) ** 2))
    prev = None
    for _ in range(48):
        value = full_state_expectation(t, order, n_max)
        if prev is not None and abs(value - prev) <= tol * abs(value):
            return LogComplex.from_complex(value).squared_modulus()
        prev = value
        n_max *= 2
    raise ConvergenceError("full-state correlator truncation did not converge")


def f_factor_log(distribution: PairDistribution, order_a: int, order_b: int,
                 tol: float = 1e-12) -> float:
    """ln f_mk, f_mk = sum_{N >= max(m,k)} p_N (N!/(N-m)! N!/(N-k)!)^2.

    The positive series is accumulated in log domain past the stored
    truncation until the terms decrease and the geometric tail estimate
    drops below tol/10 of the partial sum (10x safety on the ratio test).
    """
    if order_a < 0 or order_b < 0:
        raise ValueError("orders must be nonnegative")
    if tol <= 0:
        raise ValueError("tol must be positive")
    t = distribution.t
    start = max(order_a, order_b)
    if t == 0.0:
        return 0.0 if start == 0 else float("-inf")
    total = float("-inf")
    prev_term = None
    n = start
    budget = max(1_000_000, 10 * distribution.max_n)
    while n <= start + budget:
        term = (log_pair_probability(t, n)
                + 2.0 * (log_factorial(n) - log_factorial(n - order_a))
                + 2.0 * (log_factorial(n) - log_factorial(n - order_b)))
        total = np.logaddexp(total, term)
        if prev_term is not None and term < prev_term and n > distribution.max_n:
            ratio = math.exp(term - prev_term)
            tail = (float("-inf") if ratio == 0.0
                    else term + math.log(ratio / (1.0 - ratio)))
            if tail <= math.log(tol / 10.0) + total:
                return float(total)
        prev_term = term
        n += 1
    raise ConvergenceError("fluctuation factor series did not converge")


def full_state_report(t: float, order: int, tol: float = 1e-10) -> CorrelatorReport:
    """Full-state correlator against the fluctuation-rescaled bound 2^-2m f_mm."""
    if t <= 0:
        raise ValueError("full-state report needs t > 0")
    dist = build_distribution(t, min(1e-13, tol))
    f_log = f_factor_log(dist, order, order, tol=min(tol, 1e-12))
    bound = f_log - 2.0 * order * _LN2
    return CorrelatorReport.from_parts(
        order, analytic_full_correlator(t, order), bound,
        f_log - 4.0 * order * _LN2)


def fixed_n_state(n_per_region: int) -> FixedNTwoRegionState:
    """Post-selected fixed-N state with uniform amplitudes 1/sqrt(N+1)."""
    if n_per_region < 1:
        raise ValueError("need N >= 1")
    amps = np.full(n_per_region + 1, 1.0 / math.sqrt(n_per_region + 1.0),
                   dtype=complex)
    return FixedNTwoRegionState(n_per_region, amps)


def fixed_n_expectation(state: FixedNTwoRegionState, order: int) -> LogComplex:
    """<psi_N| J_+^(A)m J_-^(B)m |psi_N> via the matrix-free paired shift.

    Each region contributes sqrt((n+j+1)(N-n-j)) per step, so the paired
    term carries the full product [(n+m)!/n!][(N-n)!/(N-n-m)!].  Real and
    imaginary parts are accumulated as signed log-domain sums, which keeps
    N in the hundreds overflow-free.
    """
    n_tot = state.n_per_region
    if not 0 <= order <= n_tot:
        raise ValueError(f"need 0 <= m <= N, got m={order}, N={n_tot}")
    re_terms, im_terms = [], []
    for n in range(n_tot - order + 1):
        log_w = (log_factorial(n + order) - log_factorial(n)
                 + log_factorial(n_tot - n) - log_factorial(n_tot - n - order))
        pair = complex(np.conj(state.amplitudes[n + order]) * state.amplitudes[n])
        re_terms.append(LogScalar.from_real(pair.real) * LogScalar(1, log_w))
        im_terms.append(LogScalar.from_real(pair.imag) * LogScalar(1, log_w))
    re = log_sum_exp_signed(re_terms)
    im = log_sum_exp_signed(im_terms)
    if re.is_zero and im.is_zero:
        return LogComplex.zero()
    mag_sq = log_sum_exp_signed([
        LogScalar(1, 2.0 * re.log_magnitude) if not re.is_zero else LogScalar.zero(),
        LogScalar(1, 2.0 * im.log_magnitude) if not im.is_zero else LogScalar.zero(),
    ])
    # atan2 is scale-free, so rescale both parts by the common magnitude
    scale = max(re.log_magnitude, im.log_magnitude)
    x = 0.0 if re.is_zero else re.sign * math.exp(re.log_magnitude - scale)
    y = 0.0 if im.is_zero else im.sign * math.exp(im.log_magnitude - scale)
    return LogComplex(0.5 * mag_sq.log_magnitude, math.atan2(y, x))


def fixed_n_correlator(state: FixedNTwoRegionState, order: int) -> CorrelatorReport:
    """Fixed-N correlator against the bound (N!/(N-m)!)^4 2^-2m."""
    n_tot = state.n_per_region
    if order > n_tot:
        raise ValueError(f"order {order} exceeds pairs per region {n_tot}")
    value = fixed_n_expectation(state, order).squared_modulus()
    factor = 4.0 * (log_factorial(n_tot) - log_factorial(n_tot - order))
    return CorrelatorReport.from_parts(order, value,
                                       factor - 2.0 * order * _LN2,
                                       factor - 4.0 * order * _LN2)


def reduced_region_moment(n_per_region: int, order: int) -> LogScalar:
    """Tr[J_+^m rho_A] for the fixed-N state reduced to one region.

    Computed by an explicit partial trace of the paired pure state followed
    by a dense operator trace; the reduced state is the maximal mixture, so
    every diagonal term vanishes identically and the signed log-domain sum
    returns the canonical zero.
    """
    if n_per_region < 1 or order < 0:
        raise ValueError("need N >= 1 and m >= 0")
    state = fixed_n_state(n_per_region)
    dim = n_per_region + 1
    # full two-region amplitude matrix Psi[a_index, b_index]
    psi = np.zeros((dim, dim), dtype=complex)
    for n in range(dim):
        psi[n, n_per_region - n] = state.amplitudes[n]
    rho_a = psi @ psi.conj().T
    op = np.linalg.matrix_power(j_plus_matrix(n_per_region), order)
    diag = np.diagonal(op @ rho_a)
    return log_sum_exp_signed([LogScalar.from_real(float(x.real)) for x in diag])


def mixture_equivalence_check(t: float, order: int, truncation: int) -> float:
    """|pure-state expectation - sum_N p_N <psi_N|op|psi_N>| at equal truncation.

    Both sides run over complete fixed-N sectors up to the truncation; the
    paired operator conserves per-region particle number, so the two
    groupings differ only by floating-point rounding.
    """
    if t < 0 or order < 1 or truncation < order:
        raise ValueError("need t >= 0, m >= 1 and truncation >= m")
    pure = full_state_expectation(t, order, truncation, by_sector=True)
    mixed = 0.0
    for n_pairs in range(order, truncation + 1):
        sector = fixed_n_expectation(fixed_n_state(n_pairs), order)
        mixed += pair_probability(t, n_pairs) * sector.to_complex().real
    return abs(pure - mixed)
