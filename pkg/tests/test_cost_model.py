"""Tests for the memory, cycle and resource models."""

from __future__ import annotations

import pytest

from data.models import CostModelSettings, EmulatorSettings, PEConfig, Regime
from estimation.cost_model import (
    baseline_config,
    best_split,
    cycle_model,
    device_fit,
    memory_grid,
    memory_model,
    resource_model,
    sweep,
)
from kernels.errors import RangeError

REFERENCE = EmulatorSettings().reference_configs


def cfg(pes: int, ldm: int = 2 ** 16) -> PEConfig:
    return PEConfig(pe_count=pes, ldm_depth=ldm)


class TestMemoryModel:
    def test_twenty_qubits(self):
        report = memory_model(20)
        assert report.traditional_bytes == 16_777_216
        assert report.traditional_gb == 0.0168

    def test_thirty_two_qubits(self):
        report = memory_model(32, 16)
        assert report.traditional_gb == 68.7195
        assert report.emms_bytes == 2_097_152
        assert report.emms_bytes <= 3e6
        assert report.efficiency_factor == 2 ** 15

    @pytest.mark.parametrize("n", range(20, 33))
    def test_split_storage_bound(self, n):
        report = memory_model(n)
        assert report.emms_bytes <= 3e6
        if n % 2 == 0:
            assert report.efficiency_factor == 2 ** (report.n_bar - 1)

    @pytest.mark.parametrize("n", [2, 7, 20, 31])
    def test_split_symmetric(self, n):
        for k in range(1, n):
            assert memory_model(n, k).emms_bytes == memory_model(n, n - k).emms_bytes

    @pytest.mark.parametrize("n,expected", [(5, 3), (6, 3), (1, 1), (32, 16)])
    def test_best_split(self, n, expected):
        assert best_split(n) == expected

    def test_grid_skips_invalid_cells(self):
        cells = [(r.n, r.n_bar) for r in memory_grid([4, 5], [3, 5])]
        assert cells == [(4, 3), (5, 3), (5, 5)]

    @pytest.mark.parametrize("n,n_bar", [(33, 16), (4, 0), (4, 5), (0, None)])
    def test_ranges(self, n, n_bar):
        with pytest.raises(RangeError):
            memory_model(n, n_bar)


class TestCycleModel:
    def test_worked_example(self):
        report = cycle_model(4, 100, cfg(4), 2)
        assert (report.c_write, report.c_tp, report.c_mm, report.c_read) == (16, 200, 400, 16)
        assert report.total == 632
        assert report.regime is Regime.RESIDENT
        assert report.tp_mm == 600

    @pytest.mark.parametrize(
        "n,m,pes,ldm,n_bar,total",
        [
            (4, 100, 4, 2 ** 16, 2, 632),
            (4, 0, 4, 2 ** 16, 2, 32),
            (2, 10, 4, 2 ** 16, None, 28),
            (6, 50, 8, 2 ** 14, 3, 628),
            (10, 100, 16, 2 ** 12, 5, 8848),
            (10, 100, 32, 2 ** 10, 5, 5448),
            (12, 20, 4, 2 ** 16, 6, 29312),
            (3, 7, 4, 2 ** 16, 2, 44),
            (5, 3, 8, 2 ** 14, None, 82),
            (16, 100, 16, 2 ** 12, 8, 543872),
            (15, 100, 32, 2 ** 10, 8, 169136),
            (7, 1, 2, 2 ** 16, 4, 332),
        ],
    )
    def test_resident_totals(self, n, m, pes, ldm, n_bar, total):
        report = cycle_model(n, m, cfg(pes, ldm), n_bar)
        assert report.regime is Regime.RESIDENT
        assert report.total == total

    def test_streaming_example(self):
        report = cycle_model(16, 100, cfg(32, 2 ** 10), 8)
        assert report.regime is Regime.STREAMING
        assert (report.c_tp, report.c_mm) == (1600, 204800)
        assert report.total == 13_313_600

    def test_no_groups(self):
        report = cycle_model(4, 0, cfg(4), 2)
        assert report.io_fraction == 1.0

    @pytest.mark.parametrize("config,flip", list(zip(REFERENCE, [18, 17, 16, 15])))
    def test_regime_flip(self, config, flip):
        assert cycle_model(flip, 100, config).regime is Regime.RESIDENT
        after = cycle_model(flip + 1, 100, config)
        assert after.regime is Regime.STREAMING
        assert after.io_fraction > 0.5

    def test_streaming_io_fraction_independent_of_groups(self):
        small = cycle_model(20, 10, cfg(4))
        large = cycle_model(20, 1000, cfg(4))
        assert small.io_fraction == pytest.approx(large.io_fraction, rel=1e-12)

    def test_crossover(self):
        for n in range(2, 15):
            totals = {c.pe_count: cycle_model(n, 100, c).total for c in REFERENCE}
            assert totals[32] == min(totals.values())
        at_sixteen = {c.pe_count: cycle_model(16, 100, c).total for c in REFERENCE}
        assert min(at_sixteen, key=at_sixteen.get) == 16

    def test_ddr_state_bytes(self):
        assert cycle_model(10, 1, cfg(4)).ddr_state_bytes == 2 * 1024 * 16

    @pytest.mark.parametrize("n,m,n_bar", [(1, 10, None), (27, 10, None), (4, -1, None), (4, 10, 5)])
    def test_ranges(self, n, m, n_bar):
        with pytest.raises(RangeError):
            cycle_model(n, m, cfg(4), n_bar)

    def test_baseline_config(self):
        base = baseline_config(cfg(16, 2 ** 12))
        assert (base.pe_count, base.ldm_depth) == (1, 2 ** 16)


class TestResources:
    def test_dsp_count(self):
        assert resource_model(cfg(64, 2 ** 6)).dsp_count == 2048

    def test_max_resident_qubits(self):
        assert resource_model(cfg(32, 2 ** 10)).max_resident_qubits == 15

    def test_large_config_overflows_device(self):
        report = resource_model(cfg(4, 2 ** 16))
        assert report.bram_blocks == 2964
        assert not device_fit(report).fits

    def test_small_config_fits(self):
        report = resource_model(cfg(4, 2 ** 10))
        assert (report.bram_blocks, report.dsp_count) == (276, 128)
        fit = device_fit(report)
        assert fit.fits
        assert fit.device == "ZCU102"
        assert fit.bram_utilization == round(276 / 912, 4)

    def test_settings_change_dsp(self):
        settings = CostModelSettings(dsp_per_multiplier=3)
        assert resource_model(cfg(4), settings).dsp_count == 96


class TestSweep:
    def test_cycle_sweep_rows(self):
        rows = sweep("cycles", range(2, 27), REFERENCE)
        assert len(rows) == 100
        assert [r.pe_count for r in rows[:25]] == [4] * 25
        assert [r.n for r in rows[:3]] == [2, 3, 4]

    def test_memory_sweep(self):
        rows = sweep("memory", range(20, 33))
        assert len(rows) == 13
        assert rows[-1].traditional_gb == 68.7195

    def test_memory_grid_sweep(self):
        assert len(sweep("memory", [4, 8], n_bar_values=[2, 6])) == 3

    def test_cycle_sweep_with_n_bars(self):
        rows = sweep("cycles", [4], [cfg(4)], n_bar_values=[1, 2, 5])
        assert [r.n_bar for r in rows] == [1, 2]

    def test_resource_sweep(self):
        rows = sweep("resources", configs=REFERENCE)
        assert [r.pe_count for r in rows] == [4, 8, 16, 32]

    def test_unknown_kind(self):
        with pytest.raises(RangeError, match="Unknown sweep"):
            sweep("power", [4])

    def test_empty_ranges(self):
        with pytest.raises(RangeError):
            sweep("cycles", [], REFERENCE)
        with pytest.raises(RangeError):
            sweep("resources")

    def test_out_of_range_point(self):
        with pytest.raises(RangeError):
            sweep("cycles", [30], REFERENCE)
