"""Tests for dividing-point selection, partitioning and block-wise evolution."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circuits.builders import build_random
from data.models import PEConfig
from evaluation.oracle import dense_unitary
from gates.library import GateSpec, gate_matrix
from kernels.arithmetic import ScalarMode
from kernels.coo import StateVector, identity, is_unit_row
from kernels.errors import PreconditionError
from orchestration.fusion import FusedGroup, fuse
from orchestration.partition import (
    Partition,
    assign_blocks,
    choose_n_bar,
    evolve_group,
    partition,
)
from tests.conftest import random_amplitudes

PE_COUNTS = [1, 2, 4, 8, 16, 32]


def x_group() -> FusedGroup:
    return FusedGroup([GateSpec("X", (0,))])


class TestChooseNBar:
    def test_default_is_half(self):
        assert choose_n_bar(FusedGroup(), 5) == 3

    def test_dense_gate_forces_low(self):
        group = FusedGroup([GateSpec("H", (0,)), GateSpec("Z", (1,))])
        assert choose_n_bar(group, 2) == 0

    def test_dense_gate_below_cut_is_fine(self):
        group = FusedGroup([GateSpec("Z", (0,)), GateSpec("H", (1,))])
        assert choose_n_bar(group, 2) == 1

    def test_straddling_gate_lowers_cut(self):
        group = FusedGroup([GateSpec("CX", (1, 2))])
        assert choose_n_bar(group, 4, 2) == 1

    def test_controlled_dense_gate_kept_low(self):
        group = FusedGroup([GateSpec("CH", (0, 1))])
        assert choose_n_bar(group, 4) == 0

    @pytest.mark.parametrize("hint", [-1, 5])
    def test_hint_range(self, hint):
        with pytest.raises(PreconditionError):
            choose_n_bar(FusedGroup(), 4, hint)


class TestPartition:
    def test_single_x_on_top(self, mode):
        part = partition(x_group(), 3, 1, mode)
        assert part.n_bar == 1
        assert [(t.row, t.col) for t in part.g_bar.tuples()] == [(0, 1), (1, 0)]
        np.testing.assert_array_equal(part.g_bar.complex_values(), [1, 1])
        assert part.g_low.equals(identity(4, mode))

    def test_identity_group(self):
        part = partition(FusedGroup(), 4)
        assert part.n_bar == 2
        assert part.g_bar.equals(identity(4))
        assert part.g_low.equals(identity(4))
        assert is_unit_row(part.g_bar)

    def test_hadamard_pushed_low(self):
        part = partition(FusedGroup([GateSpec("H", (0,)), GateSpec("Z", (1,))]), 2)
        assert part.n_bar == 0
        assert part.g_bar.equals(identity(1))
        assert part.g_low.dim == 4
        assert part.g_low.nnz == 8

    def test_dimensions_multiply(self):
        for group in fuse(build_random(7, 40, 3)):
            part = partition(group, 7)
            assert part.g_bar.dim * part.g_low.dim == 1 << 7
            assert is_unit_row(part.g_bar)

    def test_footprints(self):
        part = partition(FusedGroup(), 4)
        assert part.footprint_bytes == (4 + 4) * 16
        assert part.dense_footprint_bytes == 16 * 16
        assert part.to_dict()["unit_row"] is True

    def test_gate_beyond_register(self):
        with pytest.raises(PreconditionError):
            partition(FusedGroup([GateSpec("X", (4,))]), 3)


class TestEvolveGroup:
    def test_x_swaps_halves(self, swap_halves_state):
        psi = StateVector.from_amplitudes(swap_halves_state)
        out = evolve_group(partition(x_group(), 3, 1), psi).to_complex()
        np.testing.assert_array_equal(out[:4], swap_halves_state[4:])
        np.testing.assert_array_equal(out[4:], swap_halves_state[:4])

    def test_x_swaps_halves_fixed(self, swap_halves_state):
        psi = StateVector.from_amplitudes(swap_halves_state, ScalarMode.FIXED)
        part = partition(x_group(), 3, 1, ScalarMode.FIXED)
        out = evolve_group(part, psi).to_complex()
        swapped = np.concatenate([swap_halves_state[4:], swap_halves_state[:4]])
        assert np.max(np.abs(out - swapped)) <= 2.0 ** -29

    def test_identity_unchanged(self, mode):
        psi = StateVector.from_amplitudes(random_amplitudes(4, seed=5), mode)
        assert evolve_group(partition(FusedGroup(), 4, None, mode), psi).equals(psi)

    def test_rejects_non_unit_row(self):
        h = gate_matrix(GateSpec("H", (0,)))
        part = Partition(2, 1, h, identity(2))
        with pytest.raises(PreconditionError, match="one non-zero per row"):
            evolve_group(part, StateVector.zero_state(2))

    def test_rejects_wrong_state_size(self):
        with pytest.raises(PreconditionError):
            evolve_group(partition(FusedGroup(), 3), StateVector.zero_state(2))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000))
    def test_random_six_qubit_group_matches_dense(self, seed):
        group = fuse(build_random(6, 20, seed))[0]
        amps = random_amplitudes(6, seed)
        out = evolve_group(partition(group, 6), StateVector.from_amplitudes(amps))
        expected = dense_unitary(group, 6).apply(amps)
        np.testing.assert_allclose(out.to_complex(), expected, atol=1e-10)

    @pytest.mark.parametrize("workers", [1, 3])
    def test_bit_identical_across_pe_counts(self, mode, workers):
        amps = random_amplitudes(8, seed=9)
        for group in fuse(build_random(8, 25, 17))[:4]:
            part = partition(group, 8, None, mode)
            psi = StateVector.from_amplitudes(amps, mode)
            reference = evolve_group(part, psi, PEConfig(pe_count=1))
            for pes in PE_COUNTS:
                out = evolve_group(part, psi, PEConfig(pe_count=pes), workers=workers)
                assert out.equals(reference)


class TestAssignBlocks:
    def test_round_robin(self):
        assert assign_blocks(5, 2) == [[0, 2, 4], [1, 3]]

    def test_more_pes_than_blocks(self):
        assert assign_blocks(2, 4) == [[0], [1], [], []]
