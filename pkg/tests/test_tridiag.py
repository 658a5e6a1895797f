import math

import numpy as np
import pytest

from curvedchain.errors import ConvergenceError
from curvedchain.metrics import MetricKind, MetricSpec, build_profile
from curvedchain.tridiag import HoppingMatrix, eigendecompose, hopping_matrix

from helpers import charpoly_eigenvalues, random_smooth_profile


def uniform_matrix(N, J0=1.0):
    return HoppingMatrix(N=N, diag=np.zeros(N), offdiag=-J0 * np.ones(N - 1))


class TestSmallClosedForms:
    def test_two_sites(self):
        s = eigendecompose(uniform_matrix(2))
        np.testing.assert_allclose(s.eigenvalues, [-1.0, 1.0], atol=1e-15)

    def test_three_sites(self):
        J1, J2 = 0.7, 1.3
        T = HoppingMatrix(N=3, diag=np.zeros(3), offdiag=np.array([-J1, -J2]))
        s = eigendecompose(T)
        r = math.hypot(J1, J2)
        np.testing.assert_allclose(s.eigenvalues, [-r, 0.0, r], atol=1e-14)

    def test_four_sites_golden(self):
        s = eigendecompose(uniform_matrix(4))
        expected = [-1.6180340, -0.6180340, 0.6180340, 1.6180340]
        np.testing.assert_allclose(s.eigenvalues, expected, atol=5e-8)
        # cross-check against the characteristic-polynomial oracle
        oracle = charpoly_eigenvalues(np.zeros(4), -np.ones(3))
        np.testing.assert_allclose(s.eigenvalues, oracle, atol=1e-9)


class TestAgainstCharpolyOracle:
    @pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7, 8])
    def test_random_hoppings(self, N):
        rng = np.random.default_rng(100 + N)
        J = rng.uniform(0.4, 1.6, N - 1)
        T = HoppingMatrix(N=N, diag=np.zeros(N), offdiag=-J)
        s = eigendecompose(T)
        np.testing.assert_allclose(s.eigenvalues, charpoly_eigenvalues(np.zeros(N), -J), atol=1e-8)


class TestInvariants:
    @pytest.mark.parametrize("N", [8, 33, 64, 128])
    def test_residual_orthogonality(self, N):
        rng = np.random.default_rng(N)
        J = rng.uniform(0.5, 1.5, N - 1)
        T = HoppingMatrix(N=N, diag=np.zeros(N), offdiag=-J)
        s = eigendecompose(T)
        U, w = s.eigenvectors, s.eigenvalues
        assert np.abs(T.apply(U) - U * w).max() <= 1e-10 * J.max()
        assert np.abs(U.T @ U - np.eye(N)).max() <= 1e-10
        assert (np.diff(w) >= 0).all()

    @pytest.mark.parametrize("N", [8, 64, 202])
    def test_particle_hole(self, N):
        rng = np.random.default_rng(N + 1)
        J = rng.uniform(0.5, 1.5, N - 1)
        T = HoppingMatrix(N=N, diag=np.zeros(N), offdiag=-J)
        s = eigendecompose(T)
        w, U = s.eigenvalues, s.eigenvectors
        assert np.abs(w + w[::-1]).max() <= 1e-10 * J.max()
        # U_{i,k} = +-(-1)^i U_{i,N+1-k} up to one overall sign per column
        signs = (-1.0) ** np.arange(1, N + 1)
        for k in range(N):
            a = U[:, k]
            b = signs * U[:, N - 1 - k]
            assert min(np.abs(a - b).max(), np.abs(a + b).max()) < 1e-9

    def test_trace_and_frobenius(self):
        rng = np.random.default_rng(5)
        J = rng.uniform(0.5, 1.5, 199)
        T = HoppingMatrix(N=200, diag=np.zeros(200), offdiag=-J)
        w = eigendecompose(T, vectors=False).eigenvalues
        assert abs(w.sum()) <= 1e-10 * 200 * J.max()
        assert abs((w**2).sum() - 2 * (J**2).sum()) <= 1e-10 * 2 * (J**2).sum()

    def test_uniform_dispersion_large(self):
        # analytic open-chain spectrum up to N = 10^4, eigenvalues only
        N = 10_000
        w = eigendecompose(uniform_matrix(N), vectors=False).eigenvalues
        k = np.arange(1, N + 1)
        exact = np.sort(-2.0 * np.cos(k * math.pi / (N + 1)))
        assert np.abs(w - exact).max() <= 1e-10

    def test_no_zero_modes_even_uniform(self):
        for N in (8, 100, 400):
            w = eigendecompose(uniform_matrix(N), vectors=False).eigenvalues
            assert np.abs(w).min() > 1e-12


class TestDegenerateSine:
    def test_occupied_projector_basis_independent(self):
        # sine metrics can produce near-degenerate pairs; only the projector
        # onto the occupied subspace is physical
        N = 128
        prof = build_profile(MetricSpec(MetricKind.SINE, A=0.5, k=2 * math.pi / 16), N)
        T = hopping_matrix(prof)
        s = eigendecompose(T)
        occ = s.eigenvectors[:, : N // 2]
        P = occ @ occ.T
        w_ref, U_ref = np.linalg.eigh(T.dense())
        occ_ref = U_ref[:, np.argsort(w_ref)[: N // 2]]
        P_ref = occ_ref @ occ_ref.T
        assert np.abs(P - P_ref).max() < 1e-8


class TestDeterminismAndConventions:
    def test_bit_identical_runs(self):
        prof = build_profile(MetricSpec(MetricKind.RAINBOW, h=0.02), 64)
        T = hopping_matrix(prof)
        s1 = eigendecompose(T)
        s2 = eigendecompose(T)
        assert np.array_equal(s1.eigenvalues, s2.eigenvalues)
        assert np.array_equal(s1.eigenvectors, s2.eigenvectors)

    def test_sign_convention(self):
        rng = np.random.default_rng(42)
        J = rng.uniform(0.5, 1.5, 31)
        s = eigendecompose(HoppingMatrix(N=32, diag=np.zeros(32), offdiag=-J))
        for k in range(32):
            col = s.eigenvectors[:, k]
            first = col[np.nonzero(col)[0][0]]
            assert first > 0

    def test_convergence_error_carries_index(self):
        rng = np.random.default_rng(9)
        J = rng.uniform(0.5, 1.5, 49)
        T = HoppingMatrix(N=50, diag=np.zeros(50), offdiag=-J)
        with pytest.raises(ConvergenceError) as exc:
            eigendecompose(T, max_sweeps=0)
        assert 0 <= exc.value.index < 50


class TestEnergyHomogeneity:
    def test_eigenvalues_scale_linearly(self):
        rng = np.random.default_rng(12)
        prof = random_smooth_profile(40, rng)
        lam = 1.7
        w1 = eigendecompose(hopping_matrix(prof), vectors=False).eigenvalues
        from curvedchain.metrics import HoppingProfile

        w2 = eigendecompose(
            hopping_matrix(HoppingProfile(N=40, J=lam * prof.J)), vectors=False
        ).eigenvalues
        np.testing.assert_allclose(w2, lam * w1, rtol=1e-12)
