"""Independent brute-force oracles used across the test modules.

Everything here is built from first principles (dense matrices, exact
integer combinatorics, direct summation) and deliberately avoids the
matrix-free / log-domain code paths under test.
"""

import math

import numpy as np


def pascal_binomial(n, k):
    """C(n, k) as an exact integer via the Pascal recurrence."""
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row[k]


def j_plus_dense(n_particles):
    """Dense a^dag b in the |n, N-n> basis, built from the ladder formula."""
    dim = n_particles + 1
    mat = np.zeros((dim, dim), dtype=complex)
    for n in range(n_particles):
        mat[n + 1, n] = math.sqrt((n + 1) * (n_particles - n))
    return mat


def j_minus_dense(n_particles):
    return j_plus_dense(n_particles).conj().T


def jx_dense(n_particles):
    jp = j_plus_dense(n_particles)
    return 0.5 * (jp + jp.conj().T)


def jy_dense(n_particles):
    jp = j_plus_dense(n_particles)
    return (jp - jp.conj().T) / 2j


def jz_dense(n_particles):
    n = np.arange(n_particles + 1)
    return np.diag(n - n_particles / 2.0).astype(complex)


def dense_expectation_power(amplitudes, order, lowering=False):
    """<psi| J_+/-^m |psi> by dense matrix powers on raw amplitudes."""
    n_particles = len(amplitudes) - 1
    op = j_minus_dense(n_particles) if lowering else j_plus_dense(n_particles)
    vec = np.asarray(amplitudes, dtype=complex)
    return complex(vec.conj() @ np.linalg.matrix_power(op, order) @ vec)


def bose_hubbard_dense(n_particles, interaction):
    """-Jx + (U/N) Jz^2 assembled from the dense operator triad."""
    jz = jz_dense(n_particles)
    return (-jx_dense(n_particles)
            + (interaction / n_particles) * (jz @ jz)).real


def dense_ground_state(n_particles, interaction):
    """Full eigensolve; returns (energy, sign-fixed vector)."""
    vals, vecs = np.linalg.eigh(bose_hubbard_dense(n_particles, interaction))
    vec = vecs[:, 0]
    if vec[np.argmax(np.abs(vec))] < 0:
        vec = -vec
    return float(vals[0]), vec


def random_dicke_amplitudes(n_particles, rng, real=False):
    """Normalized random amplitude vector."""
    vec = rng.standard_normal(n_particles + 1)
    if not real:
        vec = vec + 1j * rng.standard_normal(n_particles + 1)
    return vec / np.linalg.norm(vec)


def two_region_paired_vector(amplitudes):
    """Flattened (N+1)^2 vector for sum_n a_n |n>_A |N-n>_B."""
    n_particles = len(amplitudes) - 1
    dim = n_particles + 1
    psi = np.zeros((dim, dim), dtype=complex)
    for n in range(dim):
        psi[n, n_particles - n] = amplitudes[n]
    return psi.reshape(-1)


def dense_fixed_n_expectation(amplitudes, order):
    """<psi| J_+^(A)m J_-^(B)m |psi> on the explicit two-region product space."""
    n_particles = len(amplitudes) - 1
    dim = n_particles + 1
    op = np.kron(
        np.linalg.matrix_power(j_plus_dense(n_particles), order),
        np.linalg.matrix_power(j_minus_dense(n_particles), order))
    vec = two_region_paired_vector(amplitudes)
    return complex(vec.conj() @ op @ vec)


def word_matrix(letters, n_particles):
    """Dense ordered product of Jx/Jy collective operators."""
    ops = {"X": jx_dense(n_particles), "Y": jy_dense(n_particles)}
    out = np.eye(n_particles + 1, dtype=complex)
    for letter in letters:
        out = out @ ops[letter]
    return out
