"""Tests for COO operators, state vectors and the two kernels."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kernels.arithmetic import ScalarMode
from kernels.coo import (
    CooMatrix,
    CooTuple,
    StateVector,
    coo_from_dense,
    dense_from_coo,
    identity,
    is_unit_row,
    kron_all,
    matvec,
    row_counts,
    scale,
    tensor_product,
)
from kernels.errors import PreconditionError, RangeError, ShapeError, SizeError
from tests.conftest import Q, random_amplitudes

Z = [(0, 0, 1), (1, 1, -1)]
Y = [(0, 1, -1j), (1, 0, 1j)]
X = [(0, 1, 1), (1, 0, 1)]


def entries(matrix: CooMatrix) -> list[tuple[int, int, complex]]:
    return [(t.row, t.col, t.val) for t in matrix.tuples()]


def random_sparse(dim: int, rng: np.random.Generator, density: float = 0.4, bound: float = 0.25) -> np.ndarray:
    mask = rng.random((dim, dim)) < density
    values = rng.uniform(-bound, bound, (dim, dim)) + 1j * rng.uniform(-bound, bound, (dim, dim))
    return np.where(mask, values, 0)


def random_permutation_like(dim: int, rng: np.random.Generator) -> np.ndarray:
    dense = np.zeros((dim, dim), dtype=np.complex128)
    dense[np.arange(dim), rng.permutation(dim)] = np.exp(1j * rng.uniform(0, 2 * np.pi, dim))
    return dense


seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
small_dims = st.sampled_from([1, 2, 4, 8])


class TestCooMatrix:
    def test_from_tuples_sorts_row_major(self):
        m = CooMatrix.from_tuples(2, [(1, 0, 2), (0, 1, 1), CooTuple(0, 0, 3)])
        assert entries(m) == [(0, 0, 3), (0, 1, 1), (1, 0, 2)]

    def test_duplicates_summed_and_zeros_dropped(self):
        m = CooMatrix.from_tuples(2, [(0, 0, 0.5), (0, 0, 0.25), (1, 1, 1), (1, 1, -1), (1, 0, 0)])
        assert entries(m) == [(0, 0, 0.75)]

    def test_fixed_mode_values(self):
        m = CooMatrix.from_tuples(2, X, ScalarMode.FIXED)
        assert [t.val.to_complex() for t in m.tuples()] == [1, 1]
        assert m.vals.shape == (2, 2)

    def test_dim_must_be_power_of_two(self):
        with pytest.raises(ShapeError):
            CooMatrix.from_tuples(3, [(0, 0, 1)])

    def test_index_out_of_range(self):
        with pytest.raises(RangeError):
            CooMatrix.from_tuples(2, [(2, 0, 1)])

    def test_sizes(self):
        m = identity(8)
        assert (m.nnz, m.n_qubits, m.nbytes) == (8, 3, 128)

    def test_row_counts_and_unit_row(self):
        dense = np.array([[1, 1], [0, 1]])
        m = coo_from_dense(dense)
        assert row_counts(m).tolist() == [2, 1]
        assert not is_unit_row(m)
        assert is_unit_row(identity(4))

    def test_empty_rows_are_not_unit_row(self):
        assert not is_unit_row(CooMatrix.from_tuples(2, [(0, 0, 1)]))

    def test_scale(self, mode):
        m = scale(CooMatrix.from_tuples(2, X, mode), 0.5j)
        np.testing.assert_array_equal(m.complex_values(), [0.5j, 0.5j])
        assert m.rows.tolist() == [0, 1]


class TestTensorProduct:
    def test_z_kron_y(self):
        result = tensor_product(CooMatrix.from_tuples(2, Z), CooMatrix.from_tuples(2, Y))
        assert entries(result) == [(0, 1, -1j), (1, 0, 1j), (2, 3, 1j), (3, 2, -1j)]

    def test_identities(self, mode):
        assert tensor_product(identity(2, mode), identity(2, mode)).equals(identity(4, mode))

    def test_identity_left_repeats_blocks(self):
        y = CooMatrix.from_tuples(2, Y)
        dense = dense_from_coo(tensor_product(identity(2), y))
        np.testing.assert_array_equal(dense[:2, :2], dense_from_coo(y))
        np.testing.assert_array_equal(dense[2:, 2:], dense_from_coo(y))
        assert not dense[:2, 2:].any()

    def test_x_top_of_three_qubits(self):
        op = kron_all([CooMatrix.from_tuples(2, X), identity(2), identity(2)])
        assert op.dim == 8
        assert is_unit_row(op)
        assert entries(op)[0] == (0, 4, 1)

    def test_size_limit(self):
        empty = np.zeros(0, dtype=np.int64)
        big = CooMatrix(1 << 20, empty, empty.copy(), np.zeros(0, dtype=np.complex128))
        other = CooMatrix(1 << 13, empty, empty.copy(), np.zeros(0, dtype=np.complex128))
        with pytest.raises(SizeError):
            tensor_product(big, other)

    def test_mixed_modes_rejected(self):
        with pytest.raises(PreconditionError):
            tensor_product(identity(2, ScalarMode.FLOAT), identity(2, ScalarMode.FIXED))

    def test_empty_product_is_scalar_identity(self, mode):
        assert kron_all([], mode).equals(identity(1, mode))

    @settings(max_examples=50, deadline=None)
    @given(seeds, small_dims, small_dims)
    def test_matches_dense_kronecker(self, seed, dg, dh):
        rng = np.random.default_rng(seed)
        g, h = random_sparse(dg, rng), random_sparse(dh, rng)
        result = tensor_product(coo_from_dense(g), coo_from_dense(h))
        np.testing.assert_allclose(dense_from_coo(result), np.kron(g, h), atol=1e-12)
        assert result.nnz == np.count_nonzero(g) * np.count_nonzero(h)

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_associative(self, seed):
        rng = np.random.default_rng(seed)
        a, b, c = (coo_from_dense(random_sparse(d, rng)) for d in (2, 4, 2))
        left = tensor_product(tensor_product(a, b), c)
        right = tensor_product(a, tensor_product(b, c))
        np.testing.assert_array_equal(left.rows, right.rows)
        np.testing.assert_array_equal(left.cols, right.cols)
        np.testing.assert_allclose(left.complex_values(), right.complex_values(), atol=1e-15)

    @settings(max_examples=30, deadline=None)
    @given(seeds, small_dims, small_dims)
    def test_unit_row_closed(self, seed, dg, dh):
        rng = np.random.default_rng(seed)
        g = coo_from_dense(random_permutation_like(dg, rng))
        h = coo_from_dense(random_permutation_like(dh, rng))
        assert is_unit_row(tensor_product(g, h))


class TestMatvec:
    def test_z_kron_y_on_bell(self):
        op = tensor_product(CooMatrix.from_tuples(2, Z), CooMatrix.from_tuples(2, Y))
        out = matvec(op, StateVector.from_amplitudes([Q, 0, 0, Q]))
        np.testing.assert_allclose(out.to_complex(), [0, 1j * Q, 1j * Q, 0], atol=1e-15)

    def test_identity(self, mode):
        psi = StateVector.from_amplitudes(random_amplitudes(4, seed=3), mode)
        assert matvec(identity(16, mode), psi).equals(psi)

    def test_x_swaps(self, mode):
        psi = StateVector.from_amplitudes([0.5, 0.75j], mode)
        out = matvec(CooMatrix.from_tuples(2, X, mode), psi)
        np.testing.assert_array_equal(out.to_complex(), [0.75j, 0.5])

    def test_dimension_mismatch(self):
        with pytest.raises(ShapeError):
            matvec(identity(4), StateVector.zero_state(3))

    @settings(max_examples=40, deadline=None)
    @given(seeds, st.integers(min_value=0, max_value=6))
    def test_float_matches_dense(self, seed, n):
        rng = np.random.default_rng(seed)
        dense = random_sparse(1 << n, rng)
        amps = random_amplitudes(n, seed)
        out = matvec(coo_from_dense(dense), StateVector.from_amplitudes(amps))
        np.testing.assert_allclose(out.to_complex(), dense @ amps, atol=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(seeds, st.integers(min_value=0, max_value=4))
    def test_fixed_error_bound(self, seed, n):
        rng = np.random.default_rng(seed)
        dense = random_sparse(1 << n, rng)
        amps = random_amplitudes(n, seed)
        op = coo_from_dense(dense, ScalarMode.FIXED)
        out = matvec(op, StateVector.from_amplitudes(amps, ScalarMode.FIXED))
        per_row = np.maximum(row_counts(op), 1)
        error = np.abs(out.to_complex() - dense @ amps)
        assert np.all(error <= per_row * 2.0 ** -29)
        assert not out.saturated


class TestStateVector:
    def test_zero_state(self, mode):
        psi = StateVector.zero_state(2, mode)
        np.testing.assert_array_equal(psi.to_complex(), [1, 0, 0, 0])
        assert psi.dim == 4

    def test_basis_state_range(self):
        with pytest.raises(RangeError):
            StateVector.basis_state(2, 4)

    def test_length_checked(self):
        with pytest.raises(ShapeError):
            StateVector(2, np.zeros(3, dtype=np.complex128))

    def test_amplitude_count_power_of_two(self):
        with pytest.raises(ShapeError):
            StateVector.from_amplitudes([1, 0, 0])

    def test_norm(self):
        psi = StateVector.from_amplitudes(random_amplitudes(5, seed=1))
        assert psi.norm() == pytest.approx(1.0, abs=1e-12)

    def test_block(self):
        psi = StateVector.from_amplitudes(np.arange(8) / 10)
        block = psi.block(1, 4)
        assert block.n == 2
        np.testing.assert_array_equal(block.to_complex(), [0.4, 0.5, 0.6, 0.7])

    def test_copy_is_independent(self):
        psi = StateVector.zero_state(1)
        clone = psi.copy()
        clone.amps[0] = 0
        assert psi.to_complex()[0] == 1


class TestDenseBridge:
    def test_identity(self):
        assert entries(coo_from_dense(np.eye(2))) == [(0, 0, 1), (1, 1, 1)]

    def test_zero_matrix(self):
        assert coo_from_dense(np.zeros((4, 4))).nnz == 0

    def test_hadamard(self):
        assert coo_from_dense(np.array([[Q, Q], [Q, -Q]])).nnz == 4

    @pytest.mark.parametrize("shape", [(2, 4), (3, 3), (2,)])
    def test_bad_shapes(self, shape):
        with pytest.raises(ShapeError):
            coo_from_dense(np.ones(shape))

    @settings(max_examples=30, deadline=None)
    @given(seeds, small_dims)
    def test_round_trip_exact(self, seed, dim):
        dense = random_sparse(dim, np.random.default_rng(seed))
        np.testing.assert_array_equal(dense_from_coo(coo_from_dense(dense)), dense)
