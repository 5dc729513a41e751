import math

import numpy as np
import pytest

from bellboson.dicke import css_x, noon_state
from bellboson.hamiltonian import (GroundStateResult, TridiagonalOperator,
                                   build_bose_hubbard, ground_state)

from oracles import bose_hubbard_dense, dense_ground_state

RNG = np.random.default_rng(7)


class TestBuilder:
    def test_single_qubit_free(self):
        op = build_bose_hubbard(1, 0.0)
        assert np.array_equal(op.diagonal, [0.0, 0.0])
        assert np.array_equal(op.off_diagonal, [-0.5])

    def test_two_particles_attractive(self):
        op = build_bose_hubbard(2, -1.0)
        assert np.allclose(op.diagonal, [-0.5, 0.0, -0.5], atol=1e-15)
        assert np.allclose(op.off_diagonal,
                           [-math.sqrt(2) / 2, -math.sqrt(2) / 2], atol=1e-15)

    def test_zero_particles_rejected(self):
        with pytest.raises(ValueError):
            build_bose_hubbard(0, 1.0)

    @pytest.mark.parametrize("n", range(1, 13))
    @pytest.mark.parametrize("u", [0.0, -0.37, -1.0, -8.5, 2.0])
    def test_matches_dense_operator_construction(self, n, u):
        op = build_bose_hubbard(n, u)
        dense = np.diag(op.diagonal).astype(float)
        idx = np.arange(n)
        dense[idx, idx + 1] = op.off_diagonal
        dense[idx + 1, idx] = op.off_diagonal
        assert np.allclose(dense, bose_hubbard_dense(n, u), rtol=1e-14, atol=1e-14)

    def test_mismatched_bands_rejected(self):
        with pytest.raises(ValueError):
            TridiagonalOperator(np.zeros(4), np.zeros(4))


class TestGroundState:
    def test_single_qubit_analytic(self):
        result = ground_state(build_bose_hubbard(1, 0.0))
        assert result.energy == pytest.approx(-0.5, abs=1e-12)
        assert np.allclose(result.state.amplitudes.real,
                           [1 / math.sqrt(2)] * 2, atol=1e-10)

    def test_two_particles_free_energy(self):
        result = ground_state(build_bose_hubbard(2, 0.0))
        assert result.energy == pytest.approx(-1.0, abs=1e-12)
        assert np.allclose(result.state.amplitudes, css_x(2).amplitudes, atol=1e-10)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_free_case_recovers_coherent_state(self, n):
        result = ground_state(build_bose_hubbard(n, 0.0))
        assert result.energy == pytest.approx(-n / 2, abs=1e-10)
        assert np.linalg.norm(result.state.amplitudes - css_x(n).amplitudes) < 1e-10

    def test_strong_attraction_reaches_cat_state(self):
        result = ground_state(build_bose_hubbard(6, -1e4))
        gap = np.linalg.norm(result.state.amplitudes - noon_state(6).amplitudes)
        assert gap < 1e-3

    @pytest.mark.parametrize("n", range(1, 13))
    @pytest.mark.parametrize("u", [0.0, -0.6, -1.0, -2.4, -30.0])
    def test_energy_matches_dense_eigensolve(self, n, u):
        result = ground_state(build_bose_hubbard(n, u))
        energy, vec = dense_ground_state(n, u)
        assert result.energy == pytest.approx(energy, abs=1e-10 * max(1, abs(energy)))
        assert np.linalg.norm(result.state.amplitudes.real - vec) < 1e-8

    @pytest.mark.parametrize("n", [3, 20, 75, 140, 200])
    @pytest.mark.parametrize("u", [0.0, -0.5, -1.0, -5.0, -50.0])
    def test_parity_and_positivity(self, n, u):
        result = ground_state(build_bose_hubbard(n, u))
        amps = result.state.amplitudes.real
        assert np.max(np.abs(amps - amps[::-1])) < 1e-10
        assert np.all(amps > 0.0)

    def test_residual_postcondition(self):
        for n, u in [(5, -0.8), (100, -1.1), (6, -1e4)]:
            result = ground_state(build_bose_hubbard(n, u))
            op = build_bose_hubbard(n, u)
            vec = result.state.amplitudes.real
            resid = np.linalg.norm(op.matvec(vec) - result.energy * vec)
            assert resid <= 1e-10 * max(1.0, abs(result.energy))
            assert result.residual_norm == pytest.approx(resid, abs=1e-13)

    @pytest.mark.parametrize("n,u", [(8, -0.9), (30, -2.0), (64, 0.0)])
    def test_rayleigh_quotient_variational_bound(self, n, u):
        op = build_bose_hubbard(n, u)
        result = ground_state(op)
        for _ in range(25):
            vec = RNG.standard_normal(n + 1)
            vec /= np.linalg.norm(vec)
            assert vec @ op.matvec(vec) >= result.energy - 1e-10

    def test_bad_tolerance_rejected(self):
        with pytest.raises(ValueError):
            ground_state(build_bose_hubbard(2, 0.0), tol=0.0)

    def test_result_is_normalized_dicke_vector(self):
        result = ground_state(build_bose_hubbard(17, -1.3))
        assert isinstance(result, GroundStateResult)
        assert result.state.n_particles == 17
        assert result.state.norm_sq() == pytest.approx(1.0, abs=1e-12)


class TestDegenerateDoublet:
    """At strongly negative U the lowest two states are numerically degenerate."""

    @pytest.mark.parametrize("u", [-200.0, -1e3, -1e4])
    def test_symmetric_member_selected(self, u):
        result = ground_state(build_bose_hubbard(8, u))
        amps = result.state.amplitudes.real
        # an asymmetric mix of the cat doublet would break n <-> N-n symmetry
        assert np.max(np.abs(amps - amps[::-1])) < 1e-8
        assert amps[0] == pytest.approx(1 / math.sqrt(2), abs=1e-3)
        assert amps[-1] == pytest.approx(1 / math.sqrt(2), abs=1e-3)
