"""Bosonic qubits in the symmetric basis and matrix-free ladder operators.

A system of N indistinguishable two-level bosons lives in the (N+1)-dim
space spanned by |n, N-n> (n particles up, N-n down).  The collective
raising operator a^dag b maps index n -> n+1 with matrix element
sqrt((n+1)(N-n)); m-fold powers of it are applied matrix-free with a
running renormalization so that amplitudes stay O(1) while the overall
scale accumulates in log domain (|<J_+^100>|^2 would otherwise overflow).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import NEG_INF, LogComplex, log_binomial


@dataclass(frozen=True, eq=False)
class DickeVector:
    """State of N bosonic qubits: amplitudes over |n, N-n> times exp(log_scale).

    The zero vector (e.g. the raising operator applied to the top state) is
    flagged by log_scale = -inf with an all-zero amplitude array.
    """

    n_particles: int
    amplitudes: np.ndarray
    log_scale: float = 0.0

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (self.n_particles + 1,):
            raise ValueError(
                f"amplitude array must have length N+1={self.n_particles + 1},"
                f" got shape {amps.shape}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def is_zero(self) -> bool:
        return self.log_scale == NEG_INF

    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


def _zero_vector(n_particles: int) -> DickeVector:
    return DickeVector(n_particles, np.zeros(n_particles + 1, dtype=complex),
                       log_scale=NEG_INF)


def basis_state(n_particles: int, n_up: int) -> DickeVector:
    """The basis vector |n_up, N-n_up>."""
    if not 0 <= n_up <= n_particles:
        raise ValueError(f"need 0 <= n <= N, got n={n_up}, N={n_particles}")
    amps = np.zeros(n_particles + 1, dtype=complex)
    amps[n_up] = 1.0
    return DickeVector(n_particles, amps)


def noon_state(n_particles: int) -> DickeVector:
    """(|N,0> + |0,N>)/sqrt(2), the collective-mode GHZ analogue."""
    if n_particles < 1:
        raise ValueError("noon_state needs N >= 1")
    amps = np.zeros(n_particles + 1, dtype=complex)
    amps[0] = amps[n_particles] = 1.0 / math.sqrt(2.0)
    return DickeVector(n_particles, amps)


def css_x(n_particles: int) -> DickeVector:
    """Coherent spin state polarized along x: c_n = sqrt(C(N,n)) / 2^(N/2).

    This is the analytic ground state of -Jx and serves as a solver oracle.
    """
    if n_particles < 1:
        raise ValueError("css_x needs N >= 1")
    n = np.arange(n_particles + 1)
    log_c = np.array([0.5 * log_binomial(n_particles, int(k)) for k in n])
    amps = np.exp(log_c - 0.5 * n_particles * math.log(2.0))
    return DickeVector(n_particles, amps.astype(complex))


def _apply_shift(state: DickeVector, raising: bool) -> DickeVector:
    n_tot = state.n_particles
    if state.is_zero:
        return state
    n = np.arange(n_tot)  # source indices n -> n+1 (raising) or reversed
    elements = np.sqrt((n + 1.0) * (n_tot - n))
    new = np.zeros(n_tot + 1, dtype=complex)
    if raising:
        new[1:] = elements * state.amplitudes[:-1]
    else:
        new[:-1] = elements * state.amplitudes[1:]
    norm = math.sqrt(float(np.vdot(new, new).real))
    if norm == 0.0:
        return _zero_vector(n_tot)
    return DickeVector(n_tot, new / norm, state.log_scale + math.log(norm))


def apply_j_plus(state: DickeVector) -> DickeVector:
    """Apply a^dag b, renormalized, the norm folded into log_scale."""
    return _apply_shift(state, raising=True)


def apply_j_minus(state: DickeVector) -> DickeVector:
    """Apply a b^dag (the index-lowering adjoint of apply_j_plus)."""
    return _apply_shift(state, raising=False)


def _expectation_power(state: DickeVector, order: int, raising: bool) -> LogComplex:
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    if abs(state.norm_sq() - 1.0) > 1e-8 or state.log_scale != 0.0:
        raise ValueError("expectation requires a normalized state")
    if order == 0:
        return LogComplex(0.0, 0.0)
    if order > state.n_particles:
        return LogComplex.zero()
    shifted = state
    for _ in range(order):
        shifted = _apply_shift(shifted, raising)
        if shifted.is_zero:
            return LogComplex.zero()
    overlap = complex(np.vdot(state.amplitudes, shifted.amplitudes))
    if overlap == 0:
        return LogComplex.zero()
    return LogComplex.from_complex(overlap)._shift(shifted.log_scale)


def expectation_j_plus_power(state: DickeVector, order: int) -> LogComplex:
    """<state| (a^dag b)^m |state> for a normalized state; exact zero for m > N."""
    return _expectation_power(state, order, raising=True)


def expectation_j_minus_power(state: DickeVector, order: int) -> LogComplex:
    """<state| (a b^dag)^m |state>, the adjoint counterpart."""
    return _expectation_power(state, order, raising=False)


def j_plus_matrix(n_particles: int) -> np.ndarray:
    """Dense (N+1)x(N+1) matrix of a^dag b in the symmetric basis."""
    n = np.arange(n_particles)
    mat = np.zeros((n_particles + 1, n_particles + 1), dtype=complex)
    mat[n + 1, n] = np.sqrt((n + 1.0) * (n_particles - n))
    return mat
