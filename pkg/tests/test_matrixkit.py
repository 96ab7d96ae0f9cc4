import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ptsig import errors, hamiltonian, matrixkit

EYE2 = np.eye(2)


def random_complex2(rng, scale=1.0):
    return scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))


class TestMatExp2:
    def test_zero_matrix_gives_identity(self):
        assert np.allclose(matrixkit.mat_exp2(np.zeros((2, 2))), EYE2, atol=1e-15)

    def test_diagonal_quarter_turn(self):
        theta = np.pi / 2
        got = matrixkit.mat_exp2(np.diag([-1j * theta, 1j * theta]))
        assert np.allclose(got, np.diag([-1j, 1j]), atol=1e-15)

    def test_pt_generator_matches_series_oracle(self):
        m = -1j * oracles.oracle_hamiltonian(0.0, 0.5, 1.0, 0.3)
        got = matrixkit.mat_exp2(m)
        assert np.abs(got - oracles.series_expm(m)).max() < 1e-13

    def test_random_matches_series_oracle(self, rng):
        for _ in range(300):
            m = random_complex2(rng, scale=rng.uniform(0.05, 3.0))
            want = oracles.series_expm(m)
            rel = np.abs(matrixkit.mat_exp2(m) - want).max() / max(1.0, np.abs(want).max())
            assert rel < 1e-12

    def test_near_degenerate_uses_series_path_accurately(self, rng):
        for _ in range(50):
            lam = complex(rng.normal(), rng.normal())
            m = lam * EYE2 + 1e-10 * random_complex2(rng)
            want = oracles.series_expm(m)
            rel = np.abs(matrixkit.mat_exp2(m) - want).max() / max(1.0, np.abs(want).max())
            assert rel < 1e-12

    def test_exp_inverse_identity(self, rng):
        for _ in range(200):
            m = random_complex2(rng)
            m *= rng.uniform(0.0, 5.0) / max(np.linalg.norm(m), 1e-30)
            assert np.abs(matrixkit.mat_exp2(m) @ matrixkit.mat_exp2(-m) - EYE2).max() < 1e-10

    def test_rejects_nan(self):
        with pytest.raises(errors.NonFinite):
            matrixkit.mat_exp2(np.array([[np.nan, 0], [0, 0]], dtype=complex))

    def test_rejects_inf(self):
        with pytest.raises(errors.NonFinite):
            matrixkit.mat_exp2(np.array([[0, 1j * np.inf], [0, 0]]))

    def test_rejects_wrong_shape(self):
        with pytest.raises(errors.NonFinite):
            matrixkit.mat_exp2(np.zeros((3, 3)))

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.floats(-2.0, 2.0), min_size=8, max_size=8))
    def test_property_exp_inverse(self, flat):
        m = np.array(flat[:4]).reshape(2, 2) + 1j * np.array(flat[4:]).reshape(2, 2)
        assert np.abs(matrixkit.mat_exp2(m) @ matrixkit.mat_exp2(-m) - EYE2).max() < 1e-10


class TestEig2:
    def test_diagonal(self):
        lam1, lam2, v1, v2 = matrixkit.eig2(np.diag([2.0, 5.0]))
        assert lam1 == pytest.approx(2.0) and lam2 == pytest.approx(5.0)
        assert np.allclose(v1, [1, 0]) and np.allclose(v2, [0, 1])

    def test_sigma_x(self):
        sx = np.array([[0.0, 1.0], [1.0, 0.0]])
        lam1, lam2, v1, v2 = matrixkit.eig2(sx)
        assert lam1 == pytest.approx(-1.0) and lam2 == pytest.approx(1.0)
        assert np.allclose(v1, np.array([1, -1]) / np.sqrt(2), atol=1e-15)
        assert np.allclose(v2, np.array([1, 1]) / np.sqrt(2), atol=1e-15)

    def test_pt_hamiltonian_eigenvalues_match_closed_form(self):
        params = hamiltonian.PTParams(r=0.0, s=0.5, t=1.0, xi=0.7)
        lam1, lam2, _, _ = matrixkit.eig2(hamiltonian.build(params))
        cos_a = np.cos(np.arcsin(0.5))
        assert lam1 == pytest.approx(-cos_a, abs=1e-12)
        assert lam2 == pytest.approx(cos_a, abs=1e-12)
        assert abs(lam1.imag) < 1e-12 and abs(lam2.imag) < 1e-12

    def test_residual_contract_1000_random(self, rng):
        for _ in range(1000):
            m = random_complex2(rng, scale=rng.uniform(0.1, 10.0))
            lam1, lam2, v1, v2 = matrixkit.eig2(m)
            scale = np.linalg.norm(m)
            assert np.linalg.norm(m @ v1 - lam1 * v1) <= 1e-12 * scale
            assert np.linalg.norm(m @ v2 - lam2 * v2) <= 1e-12 * scale
            assert np.linalg.norm(v1) == pytest.approx(1.0, abs=1e-12)
            assert np.linalg.norm(v2) == pytest.approx(1.0, abs=1e-12)

    def test_deterministic_ordering(self, rng):
        for _ in range(200):
            m = random_complex2(rng)
            lam1, lam2, _, _ = matrixkit.eig2(m)
            assert (lam1.real, lam1.imag) <= (lam2.real, lam2.imag)

    def test_agrees_with_scipy(self, rng):
        for _ in range(200):
            m = random_complex2(rng, scale=rng.uniform(0.2, 4.0))
            lam1, lam2, v1, v2 = matrixkit.eig2(m)
            w, v = oracles.eig_sorted_fixed_phase(m)
            assert abs(lam1 - w[0]) < 1e-10 * max(1.0, abs(w[0]))
            assert abs(lam2 - w[1]) < 1e-10 * max(1.0, abs(w[1]))

    def test_rejects_non_finite(self):
        with pytest.raises(errors.NonFinite):
            matrixkit.eig2(np.array([[1.0, np.inf], [0.0, 1.0]]))


class TestHermSqrt2:
    def test_identity(self):
        root, inv_root = matrixkit.herm_sqrt2(EYE2)
        assert np.allclose(root, EYE2, atol=1e-15)
        assert np.allclose(inv_root, EYE2, atol=1e-15)

    def test_diagonal(self):
        root, inv_root = matrixkit.herm_sqrt2(np.diag([4.0, 9.0]))
        assert np.allclose(root, np.diag([2.0, 3.0]), atol=1e-14)
        assert np.allclose(inv_root, np.diag([0.5, 1.0 / 3.0]), atol=1e-14)

    def test_cp_matrix_multiply_back(self):
        from ptsig import cpt

        params = hamiltonian.PTParams(r=0.0, s=0.5, t=1.0, xi=0.7)  # alpha = pi/6
        cp = cpt.cp_operator(params)
        root, inv_root = matrixkit.herm_sqrt2(cp)
        assert np.abs(root @ root - cp).max() < 1e-12
        assert np.abs(root @ inv_root - EYE2).max() < 1e-12

    def test_random_hermitian_pd(self, rng):
        for _ in range(200):
            g = random_complex2(rng)
            m = g @ g.conj().T + 0.05 * EYE2
            root, inv_root = matrixkit.herm_sqrt2(m)
            assert np.abs(root @ root - m).max() < 1e-12
            assert np.abs(root @ inv_root - EYE2).max() < 1e-12

    def test_rejects_non_hermitian(self):
        with pytest.raises(errors.NotHermitian):
            matrixkit.herm_sqrt2(np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_rejects_indefinite(self):
        with pytest.raises(errors.NotPositiveDefinite):
            matrixkit.herm_sqrt2(np.diag([1.0, -1.0]))

    def test_rejects_singular(self):
        with pytest.raises(errors.NotPositiveDefinite):
            matrixkit.herm_sqrt2(np.diag([1.0, 0.0]))


class TestTraceDistance2:
    def test_identical_states(self):
        assert matrixkit.trace_distance2(EYE2 / 2, EYE2 / 2) == 0.0

    def test_orthogonal_pure_states(self):
        zero = np.diag([1.0, 0.0])
        one = np.diag([0.0, 1.0])
        assert matrixkit.trace_distance2(zero, one) == pytest.approx(1.0, abs=1e-15)

    def test_diagonal_vs_maximally_mixed(self):
        for p in (0.0, 0.2, 0.5, 0.9, 1.0):
            got = matrixkit.trace_distance2(np.diag([p, 1.0 - p]), EYE2 / 2)
            assert got == pytest.approx(abs(p - 0.5), abs=1e-15)

    def test_metric_axioms(self, rng):
        for _ in range(200):
            a = oracles.random_density(rng, 2)
            b = oracles.random_density(rng, 2)
            c = oracles.random_density(rng, 2)
            dab = matrixkit.trace_distance2(a, b)
            assert dab >= 0.0
            assert dab == pytest.approx(matrixkit.trace_distance2(b, a), abs=1e-12)
            assert dab <= matrixkit.trace_distance2(a, c) + matrixkit.trace_distance2(c, b) + 1e-12
            assert dab == pytest.approx(oracles.trace_distance(a, b), abs=1e-12)
            assert 0.0 <= dab <= 1.0 + 1e-12

    def test_rejects_invalid_density(self):
        with pytest.raises(errors.InvalidState):
            matrixkit.trace_distance2(np.diag([2.0, -1.0]), EYE2 / 2)

    def test_rejects_non_hermitian(self):
        with pytest.raises(errors.InvalidState):
            matrixkit.trace_distance2(np.array([[0.5, 0.5], [0.0, 0.5]]), EYE2 / 2)


class TestKronLeft:
    def test_identity(self):
        assert np.array_equal(matrixkit.kron_left(EYE2), np.eye(4))

    def test_diagonal(self):
        got = matrixkit.kron_left(np.diag([3.0, 7.0]))
        assert np.allclose(got, np.diag([3.0, 3.0, 7.0, 7.0]))

    def test_sigma_x_moves_basis_states(self):
        sx = np.array([[0.0, 1.0], [1.0, 0.0]])
        ket00 = np.zeros(4)
        ket00[0] = 1.0
        ket10 = np.zeros(4)
        ket10[2] = 1.0
        assert np.allclose(matrixkit.kron_left(sx) @ ket00, ket10)

    def test_product_homomorphism(self, rng):
        for _ in range(100):
            a = random_complex2(rng)
            b = random_complex2(rng)
            got = matrixkit.kron_left(a) @ matrixkit.kron_left(b)
            assert np.abs(got - matrixkit.kron_left(a @ b)).max() < 1e-12

    def test_matches_numpy_kron(self, rng):
        a = random_complex2(rng)
        assert np.array_equal(matrixkit.kron_left(a), np.kron(a, EYE2))
