import numpy as np
import pytest
from numpy.testing import assert_allclose

import rodtwin as rt

from conftest import make_snapshot


class TestFourierDecomposition:
    def test_rank_one_mode_is_normalized_column(self, rng):
        u0 = rng.standard_normal(14)
        snap = make_snapshot(np.column_stack([u0, u0]), dx=0.25)
        f = rt.fourier_decomposition(snap)
        assert f.psi.shape == (14, 1)
        ip = rt.InnerProduct(0.25)
        direction = u0 / ip.norm(u0)
        sign = np.sign(f.psi[:, 0] @ direction)
        assert_allclose(sign * f.psi[:, 0], direction, atol=1e-12)

    def test_reconstruction_identity(self, rng):
        snap = make_snapshot(rng.standard_normal((12, 7)))
        f = rt.fourier_decomposition(snap)
        assert np.abs(f.psi @ f.coefficients - snap.values).max() < 1e-10

    def test_orthonormal_in_discrete_inner_product(self, rng):
        snap = make_snapshot(rng.standard_normal((20, 9)), dx=0.37)
        f = rt.fourier_decomposition(snap)
        gram = snap.dx * (f.psi.conj().T @ f.psi)
        assert np.abs(gram - np.eye(f.psi.shape[1])).max() < 1e-10

    def test_numerical_rank_cutoff(self, rng):
        basis = rng.standard_normal((16, 2))
        values = basis @ rng.standard_normal((2, 5))
        f = rt.fourier_decomposition(make_snapshot(values))
        assert f.psi.shape[1] == 2
        assert f.sigma.shape == (2,)
        assert f.coefficients.shape == (2, 5)

    def test_sigma_descending(self, burgers_snapshot):
        f = rt.fourier_decomposition(burgers_snapshot)
        assert np.all(np.diff(f.sigma) <= 0)
        # dissipative data keeps far fewer active directions than the grid
        assert f.psi.shape[1] < burgers_snapshot.n_space


class TestProject:
    def test_parallel_component_returned_whole(self, rng):
        u = rng.standard_normal(10)
        ip = rt.InnerProduct(0.1)
        assert_allclose(rt.project(2.0 * u, u, ip), 2.0 * u, atol=1e-12)

    def test_orthogonal_gives_zero(self):
        ip = rt.InnerProduct(1.0)
        phi = np.array([1.0, 0.0, 0.0])
        u = np.array([0.0, 3.0, 0.0])
        assert_allclose(rt.project(phi, u, ip), np.zeros(3), atol=1e-15)

    def test_matches_direct_formula(self, rng):
        dx = 0.05
        phi = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        u = rng.standard_normal(8)
        got = rt.project(phi, u, rt.InnerProduct(dx))
        scale = (dx * np.sum(phi * u)) / (dx * np.sum(u * u))
        assert_allclose(got, scale * u, atol=1e-13)

    def test_projection_is_idempotent(self, rng):
        ip = rt.InnerProduct(0.2)
        phi = rng.standard_normal(9)
        u = rng.standard_normal(9)
        once = rt.project(phi, u, ip)
        assert_allclose(rt.project(once, u, ip), once, atol=1e-12)

    def test_zero_column_rejected(self):
        with pytest.raises(ValueError):
            rt.project(np.ones(4), np.zeros(4), rt.InnerProduct(0.5))


class TestMeanProjectionNorm:
    def test_perfectly_aligned_single_pair(self, rng):
        u = rng.standard_normal(12)
        ip = rt.InnerProduct(0.3)
        phi = (u / ip.norm(u))[:, None]
        rho = rt.mean_projection_norm(phi, u[:, None], ip)
        assert rho == pytest.approx(1.0, abs=1e-12)

    def test_each_aligned_column_contributes_one(self, rng):
        u = rng.standard_normal(12)
        ip = rt.InnerProduct(0.3)
        phi = (u / ip.norm(u))[:, None]
        v0 = np.column_stack([u, 2.0 * u, -0.5 * u])
        rho = rt.mean_projection_norm(phi, v0, ip)
        assert rho == pytest.approx(3.0, abs=1e-10)

    def test_orthogonal_mode_contributes_zero(self):
        ip = rt.InnerProduct(1.0)
        phi = np.array([[1.0], [0.0]])
        v0 = np.array([[0.0], [2.0]])
        assert rt.mean_projection_norm(phi, v0, ip) == 0.0

    def test_column_rescale_invariance(self, rng):
        ip = rt.InnerProduct(0.02)
        modes = rng.standard_normal((15, 3)) + 1j * rng.standard_normal((15, 3))
        v0 = rng.standard_normal((15, 6))
        base = rt.mean_projection_norm(modes, v0, ip)
        scaled = v0.copy()
        scaled[:, 2] *= 17.0
        scaled[:, 4] *= -0.003
        assert rt.mean_projection_norm(modes, scaled, ip) == pytest.approx(
            base, rel=1e-10
        )

    def test_nominal_mode_count_divides(self, rng):
        ip = rt.InnerProduct(0.1)
        modes = rng.standard_normal((10, 2))
        v0 = rng.standard_normal((10, 5))
        rho = rt.mean_projection_norm(modes, v0, ip)
        half = rt.mean_projection_norm(modes, v0, ip, mode_count=4)
        assert half == pytest.approx(rho / 2.0, rel=1e-12)

    def test_unit_modes_bounded_by_column_count(self, rng):
        # Cauchy-Schwarz: each (mode, column) term is at most 1
        ip = rt.InnerProduct(0.4)
        v0 = rng.standard_normal((11, 7))
        for _ in range(5):
            phi = rng.standard_normal(11)
            phi = (phi / ip.norm(phi))[:, None]
            rho = rt.mean_projection_norm(phi, v0, ip)
            assert 0.0 <= rho <= 7.0 + 1e-12

    def test_error_cases(self, rng):
        ip = rt.InnerProduct(0.1)
        modes = rng.standard_normal((6, 2))
        v0 = rng.standard_normal((6, 3))
        v0[:, 1] = 0.0
        with pytest.raises(ValueError, match=r"\[1\]"):
            rt.mean_projection_norm(modes, v0, ip)
        with pytest.raises(ValueError):
            rt.mean_projection_norm(modes, rng.standard_normal((6, 3)), ip, mode_count=1)


class TestCompareProjections:
    def test_self_comparison_never_dominates(self, rng):
        snap = make_snapshot(rng.standard_normal((9, 6)))
        f = rt.fourier_decomposition(snap)
        ip = rt.InnerProduct(snap.dx)
        v0 = snap.values[:, :-1]
        rod, four, dominates = rt.compare_projections(
            f.psi, f, v0, ip, same_rank=True
        )
        assert rod == four
        assert dominates is False

    def test_default_divisor_is_grid_dimension(self, rng):
        snap = make_snapshot(rng.standard_normal((9, 6)))
        f = rt.fourier_decomposition(snap)
        ip = rt.InnerProduct(snap.dx)
        v0 = snap.values[:, :-1]
        _, four, _ = rt.compare_projections(f.psi, f, v0, ip)
        direct = rt.mean_projection_norm(f.psi, v0, ip, mode_count=9)
        assert four == pytest.approx(direct, rel=1e-14)

    def test_rank_one_bases_agree(self, rng):
        u0 = rng.standard_normal(13)
        values = np.column_stack([u0 * 0.9**i for i in range(6)])
        snap = make_snapshot(values)
        ip = rt.InnerProduct(snap.dx)
        model = rt.fit(snap, 1, seed=0)
        f = rt.fourier_decomposition(snap)
        rod, four, _ = rt.compare_projections(
            model.modes, f, snap.values[:, :-1], ip, same_rank=True
        )
        assert rod == pytest.approx(four, rel=1e-8)

    def test_benchmark_model_dominates(
        self, burgers_snapshot, burgers_model, burgers_fourier
    ):
        ip = rt.InnerProduct(burgers_snapshot.dx)
        v0 = burgers_snapshot.values[:, :-1]
        rod, four, dominates = rt.compare_projections(
            burgers_model.modes, burgers_fourier, v0, ip
        )
        assert dominates is True
        assert rod > four
