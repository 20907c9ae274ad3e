import numpy as np
import pytest
from hypothesis import given, strategies as st

from uncommoninfo.qlinalg import (
    DensityMatrix, InvalidStateError, PureState, eig_hermitian, fidelity, haar_unitary, ket,
    partial_trace, projector, purify, random_density, random_pure, tensor,
)

from oracles import charpoly, real_roots_bisect

seeds = st.integers(0, 2**32 - 1)


def dm(m, dims):
    return DensityMatrix(np.asarray(m, dtype=complex), dims)


class TestConstruction:
    def test_trace_violation_names_trace(self):
        with pytest.raises(InvalidStateError, match="trace") as exc:
            dm(np.eye(2) * 0.45, (2,))
        assert exc.value.check == "trace"

    def test_negative_eigenvalue_names_psd(self):
        with pytest.raises(InvalidStateError) as exc:
            dm(np.diag([1.001, -0.001]), (2,))
        assert exc.value.check == "psd"

    def test_non_hermitian(self):
        with pytest.raises(InvalidStateError) as exc:
            dm([[0.5, 0.1], [0.0, 0.5]], (2,))
        assert exc.value.check == "hermitian"

    def test_dims_must_multiply(self):
        with pytest.raises(InvalidStateError):
            dm(np.eye(4) / 4, (2, 3))

    def test_pure_state_norm(self):
        with pytest.raises(InvalidStateError, match="norm"):
            PureState([1, 1], (2,))

    def test_immutable(self):
        rho = dm(np.eye(2) / 2, (2,))
        with pytest.raises(ValueError):
            rho.data[0, 0] = 1


class TestTensor:
    def test_identity(self):
        out = tensor(dm(np.eye(2) / 2, (2,)), dm(np.eye(2) / 2, (2,)))
        assert out.dims == (2, 2)
        np.testing.assert_allclose(out.data, np.eye(4) / 4)

    def test_kets(self):
        out = tensor(PureState(ket(0, 2), (2,)), PureState(ket(1, 2), (2,)))
        np.testing.assert_allclose(out.amplitudes, ket(1, 4))

    def test_diagonal_products(self):
        p, q = 0.3, 0.8
        out = tensor(dm(np.diag([p, 1 - p]), (2,)), dm(np.diag([q, 1 - q]), (2,)))
        np.testing.assert_allclose(np.diag(out.data).real,
                                   [p * q, p * (1 - q), (1 - p) * q, (1 - p) * (1 - q)])

    def test_mixed_kinds_rejected(self):
        with pytest.raises(TypeError):
            tensor(PureState(ket(0, 2)), dm(np.eye(2) / 2, (2,)))


class TestPartialTrace:
    def test_bell_reduction(self, bell):
        np.testing.assert_allclose(partial_trace(bell, [0]).data, np.eye(2) / 2, atol=1e-15)

    def test_product(self):
        ra = random_density(2, seed=1)
        rb = random_density(3, seed=2)
        np.testing.assert_allclose(partial_trace(tensor(ra, rb), [0]).data, ra.data, atol=1e-12)

    def test_symmetric_mixture_keep_b(self, sym_mix):
        # 1/2 |0><0| + 1/2 (|0><0| + |1><1|)/2
        np.testing.assert_allclose(partial_trace(sym_mix, [1]).data, np.diag([0.75, 0.25]), atol=1e-15)

    def test_keep_order_permutes(self):
        rho = random_density(6, seed=4, dims=(2, 3))
        swapped = partial_trace(rho, [1, 0])
        assert swapped.dims == (3, 2)
        np.testing.assert_allclose(partial_trace(swapped, [1]).data, partial_trace(rho, [0]).data)

    @pytest.mark.parametrize("keep", [[2], [0, 0], [-1]])
    def test_bad_selector(self, bell, keep):
        with pytest.raises(ValueError):
            partial_trace(bell, keep)

    @given(seeds, seeds)
    def test_trace_of_tensor_recovers_factor(self, s1, s2):
        ra = random_density(3, seed=s1)
        rb = random_density(2, seed=s2)
        np.testing.assert_allclose(partial_trace(tensor(ra, rb), [0]).data, ra.data, atol=1e-10)
        np.testing.assert_allclose(partial_trace(tensor(ra, rb), [1]).data, rb.data, atol=1e-10)


class TestEig:
    def test_diagonal(self):
        w, _ = eig_hermitian(dm(np.diag([0.25, 0.75]), (2,)))
        np.testing.assert_allclose(w, [0.75, 0.25])

    def test_plus_state(self):
        plus = np.array([1, 1]) / np.sqrt(2)
        w, v = eig_hermitian(dm(projector(plus), (2,)))
        np.testing.assert_allclose(w, [1, 0], atol=1e-15)
        np.testing.assert_allclose(v[:, 0], plus, atol=1e-12)

    @given(seeds)
    def test_matches_characteristic_polynomial(self, seed):
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        h = g + g.conj().T
        w, v = eig_hermitian(h)
        bound = np.abs(h).sum()
        roots = real_roots_bisect(charpoly(h), -bound, bound)
        assert len(roots) == 4
        np.testing.assert_allclose(w, roots, atol=1e-8)
        assert np.max(np.abs(h - (v * w) @ v.conj().T)) <= 1e-10

    def test_rejects_non_hermitian(self):
        with pytest.raises(InvalidStateError):
            eig_hermitian(np.array([[0, 1], [0, 0]]))


class TestPurify:
    def test_maximally_mixed_qubit(self):
        psi = purify(dm(np.eye(2) / 2, (2,)))
        assert psi.dims == (2, 2)
        np.testing.assert_allclose(psi.amplitudes, np.array([1, 0, 0, 1]) / np.sqrt(2), atol=1e-15)

    def test_pure_input_gets_trivial_register(self):
        phi = random_pure((2, 2), seed=5)
        psi = purify(phi.density())
        assert psi.dims == (2, 2, 1)
        assert abs(abs(np.vdot(psi.amplitudes, phi.amplitudes)) - 1) < 1e-10

    def test_classical_state(self):
        p = np.array([0.1, 0.2, 0.3, 0.4])
        rho = dm(np.diag(p), (2, 2))
        psi = purify(rho)
        assert psi.dims == (2, 2, 4)
        np.testing.assert_allclose(partial_trace(psi, [0, 1]).data, rho.data, atol=1e-12)
        schmidt = np.linalg.svd(psi.amplitudes.reshape(4, 4), compute_uv=False)
        np.testing.assert_allclose(np.sort(schmidt ** 2), np.sort(p), atol=1e-12)

    def test_register_uses_rank(self):
        rho = random_density(6, rank=2, seed=3, dims=(2, 3))
        assert purify(rho).dims == (2, 3, 2)

    @given(seeds, st.integers(1, 6))
    def test_round_trip(self, seed, rank):
        rho = random_density(6, rank=rank, seed=seed, dims=(2, 3))
        back = partial_trace(purify(rho), [0, 1])
        assert np.max(np.abs(back.data - rho.data)) <= 1e-10


class TestFidelity:
    def test_self(self):
        rho = random_density(3, seed=0)
        assert fidelity(rho, rho) == pytest.approx(1, abs=1e-9)

    def test_zero_plus(self):
        # pure overlap |<0|+>| = 1/sqrt 2
        f = fidelity(dm(projector([1, 0]), (2,)), dm(projector(np.array([1, 1]) / np.sqrt(2)), (2,)))
        assert f == pytest.approx(1 / np.sqrt(2), abs=1e-12)

    def test_mixed_vs_pure(self):
        # sqrt(|0><0| (I/2) |0><0|) = |0><0| / sqrt 2
        f = fidelity(dm(np.eye(2) / 2, (2,)), dm(projector([1, 0]), (2,)))
        assert f == pytest.approx(1 / np.sqrt(2), abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            fidelity(random_density(2, seed=0), random_density(3, seed=0))

    @given(seeds, seeds)
    def test_symmetric_and_unitarily_invariant(self, s1, s2):
        a, b = random_density(3, seed=s1), random_density(3, seed=s2)
        f = fidelity(a, b)
        assert 0 <= f <= 1
        assert abs(f - fidelity(b, a)) <= 1e-9
        u = haar_unitary(3, seed=s1 ^ s2)
        ua = dm(u @ a.data @ u.conj().T, (3,))
        ub = dm(u @ b.data @ u.conj().T, (3,))
        assert abs(f - fidelity(ua, ub)) <= 1e-9

    @given(seeds)
    def test_pure_states_overlap(self, seed):
        x, y = random_pure((3,), seed), random_pure((3,), seed + 1)
        assert fidelity(x.density(), y.density()) == pytest.approx(abs(np.vdot(x.amplitudes, y.amplitudes)), abs=1e-7)

    @given(seeds)
    def test_one_only_for_equal_states(self, seed):
        a, b = random_density(2, seed=seed), random_density(2, seed=seed + 1)
        assert fidelity(a, b) < 1 - 1e-12
        assert np.max(np.abs(a.data - b.data)) > 1e-8


class TestRandom:
    def test_rank_one_is_pure(self):
        assert random_density(4, rank=1, seed=9).eigvals()[0] >= 1 - 1e-9

    def test_deterministic(self):
        np.testing.assert_array_equal(random_density(3, seed=11).data, random_density(3, seed=11).data)
        np.testing.assert_array_equal(haar_unitary(3, 11), haar_unitary(3, 11))
        np.testing.assert_array_equal(random_pure((2, 2), 11).amplitudes, random_pure((2, 2), 11).amplitudes)

    def test_mean_state_is_maximally_mixed(self):
        rng = np.random.default_rng(2024)
        mean = sum(random_density(2, seed=rng).data for _ in range(10_000)) / 10_000
        assert np.max(np.abs(mean - np.eye(2) / 2)) < 0.02

    def test_rank_out_of_range(self):
        with pytest.raises(ValueError):
            random_density(2, rank=3)

    @given(seeds, st.integers(1, 6))
    def test_haar_unitary(self, seed, d):
        u = haar_unitary(d, seed)
        assert np.max(np.abs(u.conj().T @ u - np.eye(d))) <= 1e-10
