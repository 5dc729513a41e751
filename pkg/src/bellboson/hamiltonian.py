"""Two-mode Bose-Hubbard Hamiltonian and its ground state.

H = -Jx + (U/N) Jz^2 is tridiagonal in the |n, N-n> basis: Jz^2 is diagonal
with entries (n - N/2)^2 and Jx couples n <-> n+1 with element
(1/2) sqrt((n+1)(N-n)).  Only the smallest eigenpair is needed, so the
solver brackets it by bisection on the Sturm-sequence negative-pivot count
and then runs inverse iteration.  The iteration is seeded with a
parity-symmetric vector: at strongly attractive U the lowest two states
form a cat doublet split far below double precision, and the symmetric
seed keeps the iteration inside the even-parity sector, selecting the
physical (symmetric, Perron-positive) member.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dicke import DickeVector
from .numerics import ConvergenceError

_SAFMIN = np.finfo(float).tiny
_EPS = np.finfo(float).eps


@dataclass(frozen=True, eq=False)
class TridiagonalOperator:
    """Real symmetric tridiagonal matrix: one diagonal, one shared off-diagonal."""

    diagonal: np.ndarray
    off_diagonal: np.ndarray

    def __post_init__(self):
        d = np.array(self.diagonal, dtype=float)
        e = np.array(self.off_diagonal, dtype=float)
        if d.ndim != 1 or e.shape != (max(d.size - 1, 0),):
            raise ValueError("off_diagonal must have length dimension-1")
        d.flags.writeable = False
        e.flags.writeable = False
        object.__setattr__(self, "diagonal", d)
        object.__setattr__(self, "off_diagonal", e)

    @property
    def dimension(self) -> int:
        return self.diagonal.size

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diagonal * v
        out[:-1] += self.off_diagonal * v[1:]
        out[1:] += self.off_diagonal * v[:-1]
        return out


@dataclass(frozen=True, eq=False)
class GroundStateResult:
    energy: float
    state: DickeVector
    residual_norm: float


def build_bose_hubbard(n_particles: int, interaction: float) -> TridiagonalOperator:
    """-Jx + (U/N) Jz^2 for N bosons; U is dimensionless (Josephson units)."""
    if n_particles < 1:
        raise ValueError("need at least one particle")
    n = np.arange(n_particles + 1, dtype=float)
    diag = (interaction / n_particles) * (n - n_particles / 2.0) ** 2
    m = n[:-1]
    off = -0.5 * np.sqrt((m + 1.0) * (n_particles - m))
    return TridiagonalOperator(diag, off)


def _count_below(diag, off_sq, sigma, pivmin) -> int:
    """Number of eigenvalues < sigma via the Sturm pivot recurrence."""
    count = 0
    q = 1.0
    for i in range(diag.size):
        q = diag[i] - sigma - (off_sq[i - 1] / q if i > 0 else 0.0)
        if abs(q) <= pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def _solve_tridiagonal(diag, off, sigma, rhs):
    """Solve (T - sigma I) x = rhs with partial pivoting (T may be indefinite)."""
    n = diag.size
    d = diag - sigma
    dl = off.copy()
    du = off.copy()
    du2 = np.zeros(max(n - 2, 0))
    x = rhs.astype(float).copy()
    d = d.copy()
    for i in range(n - 1):
        if abs(d[i]) >= abs(dl[i]):
            if d[i] == 0.0:
                d[i] = _SAFMIN
            factor = dl[i] / d[i]
            d[i + 1] -= factor * du[i]
            x[i + 1] -= factor * x[i]
            if i < n - 2:
                du2[i] = 0.0
        else:
            # swap rows i and i+1
            factor = d[i] / dl[i]
            d[i], dl[i] = dl[i], d[i]  # dl now stores the used pivot row info
            tmp = du[i]
            du[i] = d[i + 1]
            d[i + 1] = tmp - factor * d[i + 1]
            if i < n - 2:
                du2[i] = du[i + 1]
                du[i + 1] = -factor * du2[i]
            x[i], x[i + 1] = x[i + 1], x[i] - factor * x[i + 1]
    if d[n - 1] == 0.0:
        d[n - 1] = _SAFMIN
    # back substitution with two superdiagonals
    x[n - 1] /= d[n - 1]
    if n > 1:
        x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i]
    return x


def ground_state(operator: TridiagonalOperator, tol: float = 1e-12) -> GroundStateResult:
    """Smallest eigenpair of a symmetric tridiagonal operator.

    tol bounds the relative bisection bracket width.  The returned vector is
    normalized with the largest-magnitude component made positive, and the
    residual ||Hv - Ev|| <= 1e-10 max(1, |E|) is checked unconditionally;
    failure to converge raises instead of returning a silent wrong answer.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    d = operator.diagonal
    e = operator.off_diagonal
    n = d.size
    if n == 1:
        vec = np.ones(1)
        energy = float(d[0])
        return GroundStateResult(energy, DickeVector(0, vec.astype(complex)), 0.0)

    radius = np.zeros(n)
    radius[:-1] += np.abs(e)
    radius[1:] += np.abs(e)
    lo = float(np.min(d - radius))
    hi = float(np.max(d + radius))
    off_sq = e * e
    pivmin = max(_SAFMIN, _SAFMIN * float(np.max(off_sq, initial=0.0)))

    # shrink [lo, hi] to a bracket around the smallest eigenvalue
    span = hi - lo
    lo -= _EPS * abs(lo) + pivmin
    hi += _EPS * abs(hi) + pivmin
    for _ in range(2048):
        width = hi - lo
        if width <= tol * max(1.0, abs(lo), abs(hi)) or width <= 4 * _EPS * span:
            break
        mid = 0.5 * (lo + hi)
        if _count_below(d, off_sq, mid, pivmin) >= 1:
            hi = mid
        else:
            lo = mid
    else:
        raise ConvergenceError("eigenvalue bisection did not narrow the bracket")

    sigma = 0.5 * (lo + hi)
    # Parity-symmetric positive seed, re-projected each sweep: H commutes
    # exactly with the n <-> N-n reflection, and near-degenerate cat doublets
    # would otherwise amplify rounding-injected odd-parity contamination.
    parity_symmetric = (np.allclose(d, d[::-1], rtol=1e-14, atol=1e-300)
                        and np.allclose(e, e[::-1], rtol=1e-14, atol=1e-300))
    vec = np.ones(n) / math.sqrt(n)
    energy = float(vec @ operator.matvec(vec))
    target = 1e-10
    shift = sigma
    for _ in range(60):
        try_vec = _solve_tridiagonal(d, e, shift, vec)
        if not np.all(np.isfinite(try_vec)):
            shift = shift - tol * max(1.0, abs(shift))
            continue
        if parity_symmetric:
            try_vec = 0.5 * (try_vec + try_vec[::-1])
        nrm = float(np.linalg.norm(try_vec))
        if nrm == 0.0:
            shift = shift - tol * max(1.0, abs(shift))
            continue
        vec = try_vec / nrm
        energy = float(vec @ operator.matvec(vec))
        residual = float(np.linalg.norm(operator.matvec(vec) - energy * vec))
        if residual <= 0.5 * target * max(1.0, abs(energy)):
            break
    else:
        raise ConvergenceError("inverse iteration exhausted its budget")

    if vec[np.argmax(np.abs(vec))] < 0.0:
        vec = -vec
    residual = float(np.linalg.norm(operator.matvec(vec) - energy * vec))
    if residual > target * max(1.0, abs(energy)):
        raise ConvergenceError(
            f"ground-state residual {residual:.3e} exceeds tolerance")
    state = DickeVector(n - 1, vec.astype(complex))
    return GroundStateResult(energy, state, residual)
