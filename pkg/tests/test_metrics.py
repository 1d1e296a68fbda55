"""Gain, Doppler-spread, and delay-spread metric behavior."""

import math

import numpy as np
import pytest

from hapsris import (channel_gain, compute_report, cycle_offsets,
                     delay_spread, delay_spread_upper, delay_spread_upper_min,
                     doppler_spread, doppler_spread_split, explicit_phases,
                     gain_to_db, max_channel_gain, pairwise_sum,
                     proposed_phases, reversed_phases, snapshot)

from conftest import make_scenario, make_tiny
from test_phases import synthetic_snapshot

# Regression anchor: analytic Doppler spread of the all-zero strategy on
# the production scenario at t = 10 s, cross-checked against the
# exhaustive pairwise evaluation below.
FROZEN_REVERSED_DOPPLER_HZ = 5.797043322140837e-04


class TestPairwiseSum:

    def test_matches_fsum_on_hard_inputs(self, rng):
        values = rng.uniform(-1.0, 1.0, size=1537) * 10.0 ** rng.integers(
            -12, 12, size=1537)
        assert pairwise_sum(values) == pytest.approx(math.fsum(values),
                                                     rel=1e-12)

    def test_is_deterministic_and_order_fixed(self, rng):
        values = rng.standard_normal((33, 17))
        assert pairwise_sum(values) == pairwise_sum(values.copy())
        # A permuted input is a different reduction, not a different rule.
        assert pairwise_sum(values) == pairwise_sum(values.ravel())

    def test_handles_complex_and_trivial_sizes(self):
        assert pairwise_sum(np.array([3.25])) == 3.25
        z = np.array([1 + 2j, 3 - 1j, -4 + 0.5j])
        assert pairwise_sum(z) == (1 + 2j) + (3 - 1j) + (-4 + 0.5j)


class TestChannelGain:

    def test_single_element_gain_ignores_phase(self):
        snap = synthetic_snapshot([[1.3e-4]], amplitudes=[[4.0e-13]])
        for phase in (0.0, 1.0, 3.0):
            assignment = explicit_phases(snap, [[phase]])
            assert channel_gain(snap, assignment) == pytest.approx(
                (4.0e-13) ** 2, rel=1e-12)

    def test_opposed_equal_elements_cancel(self):
        snap = synthetic_snapshot([[1e-4, 1e-4]])
        snap.amplitude[:] = 2.0e-13
        assignment = explicit_phases(snap, [[0.0, np.pi]])
        assert channel_gain(snap, assignment) < (2.0e-13 * 1e-10) ** 2

    def test_anchor_locked_gain_achieves_the_bound(self, baseline_snapshot):
        gain = channel_gain(baseline_snapshot,
                            proposed_phases(baseline_snapshot))
        bound = max_channel_gain(baseline_snapshot)
        assert gain == pytest.approx(bound, rel=1e-9)

    def test_gain_never_exceeds_the_bound(self, baseline_snapshot, rng):
        bound = max_channel_gain(baseline_snapshot)
        for _ in range(50):
            grid = rng.uniform(0.0, 2.0 * np.pi, baseline_snapshot.shape)
            grid[grid >= 2.0 * np.pi] = 0.0
            gain = channel_gain(baseline_snapshot,
                                explicit_phases(baseline_snapshot, grid))
            assert gain <= bound * (1.0 + 1e-12)

    def test_anchor_choice_does_not_change_the_gain(self, baseline_snapshot,
                                                    rng):
        P, Q = baseline_snapshot.shape
        reference_gain = channel_gain(baseline_snapshot,
                                      proposed_phases(baseline_snapshot))
        for _ in range(5):
            ref = (int(rng.integers(1, P + 1)), int(rng.integers(1, Q + 1)))
            gain = channel_gain(baseline_snapshot,
                                proposed_phases(baseline_snapshot, ref))
            assert gain == pytest.approx(reference_gain, rel=1e-9)


class TestMaxChannelGain:

    def test_equal_amplitudes_square_law(self):
        snap = synthetic_snapshot([[1e-4] * 6])
        snap.amplitude[:] = 3.0e-13
        assert max_channel_gain(snap) == pytest.approx((6 * 3.0e-13) ** 2,
                                                       rel=1e-12)

    def test_empty_support_gives_zero(self):
        # Both stations below the panel plane: no element responds.
        scn = make_tiny(2, 2, tx_position=[-5000.0, 0.0, -20000.0],
                        rx_position=[5000.0, 0.0, -20000.0])
        snap = snapshot(scn, 0.0)
        assert max_channel_gain(snap) == 0.0
        assert gain_to_db(max_channel_gain(snap)) == -math.inf


class TestDopplerSpread:

    def test_anchor_locked_spread_is_zero(self, baseline_snapshot):
        assignment = proposed_phases(baseline_snapshot)
        assert doppler_spread(baseline_snapshot, assignment) == 0.0

    def test_stationary_reversed_spread_is_zero(self):
        scn = make_scenario(10.0, speed=0.0)
        snap = snapshot(scn, 10.0)
        assert doppler_spread(snap, reversed_phases(snap)) == 0.0

    def test_reversed_regression_anchor(self, baseline_snapshot):
        value = doppler_spread(baseline_snapshot,
                               reversed_phases(baseline_snapshot))
        assert value > 0.0
        assert value == pytest.approx(FROZEN_REVERSED_DOPPLER_HZ, rel=1e-6)

    def test_shortcut_equals_exhaustive_pairwise_maximum(self):
        scn = make_tiny(10, 5)
        snap = snapshot(scn, 10.0)
        value = doppler_spread(snap, reversed_phases(snap))
        rates = snap.delay_rate.ravel()
        fc = scn.carrier_frequency
        pairwise_max = max(abs(a - b) for a in rates for b in rates)
        assert value == fc * pairwise_max

    def test_split_diagnostics_cover_the_spread(self, baseline_snapshot):
        assignment = reversed_phases(baseline_snapshot)
        ref_rest, rest_rest = doppler_spread_split(baseline_snapshot,
                                                   assignment)
        total = doppler_spread(baseline_snapshot, assignment)
        assert max(ref_rest, rest_rest) == pytest.approx(total, rel=1e-12)
        assert ref_rest >= 0.0 and rest_rest >= 0.0

    def test_single_element_spread_is_zero(self):
        snap = synthetic_snapshot([[1e-4]], rates=[[1e-8]])
        assert doppler_spread(snap, reversed_phases(snap)) == 0.0


class TestDelaySpread:

    def test_single_element_is_zero(self):
        snap = synthetic_snapshot([[1.23e-4]])
        assert delay_spread(snap, reversed_phases(snap)) == 0.0
        offsets = cycle_offsets(snap, reference=(1, 1))
        assert delay_spread_upper_min(snap, offsets) == 0.0

    def test_reversed_equals_raw_delay_spread(self, baseline_snapshot):
        assignment = reversed_phases(baseline_snapshot)
        expected = float(baseline_snapshot.delay.max()
                         - baseline_snapshot.delay.min())
        assert delay_spread(baseline_snapshot, assignment) == expected
        assert delay_spread_upper(baseline_snapshot, assignment) == expected

    def test_proposed_spread_sits_on_the_period_lattice(
            self, baseline_snapshot):
        fc = baseline_snapshot.scenario.carrier_frequency
        value = delay_spread(baseline_snapshot,
                             proposed_phases(baseline_snapshot))
        cycles = value * fc
        tau_ref = float(baseline_snapshot.delay.max())
        assert abs(cycles - round(cycles)) < 1e-12 * tau_ref * fc

    def test_upper_bound_dominates_for_any_assignment(self,
                                                      baseline_snapshot,
                                                      rng):
        for _ in range(10):
            grid = rng.uniform(0.0, 2.0 * np.pi, baseline_snapshot.shape)
            grid[grid >= 2.0 * np.pi] = 0.0
            assignment = explicit_phases(baseline_snapshot, grid)
            assert delay_spread_upper(baseline_snapshot, assignment) \
                >= delay_spread(baseline_snapshot, assignment)

    def test_upper_gap_stays_below_one_carrier_period(
            self, baseline_scenario, baseline_grid):
        fc = baseline_scenario.carrier_frequency
        for t in np.arange(0.0, 61.0, 5.0):
            snap = snapshot(baseline_scenario, float(t), baseline_grid)
            gap = delay_spread_upper(snap, proposed_phases(snap)) \
                - delay_spread_upper(snap, reversed_phases(snap))
            assert 0.0 <= gap < 1.0 / fc

    def test_closed_form_minimum_matches_the_bound(self, rng):
        for _ in range(15):
            scn = make_scenario(
                ris_length=float(rng.uniform(1.0, 20.0)),
                orbit_radius=float(rng.uniform(1000.0, 5000.0)))
            snap = snapshot(scn, float(rng.uniform(0.0, 60.0)))
            upper = delay_spread_upper(snap, proposed_phases(snap))
            closed = delay_spread_upper_min(snap, cycle_offsets(snap))
            tau_ref = float(snap.delay.max())
            assert abs(closed - upper) <= 1e-12 * tau_ref

    def test_closed_form_requires_zero_anchor_phase(self, baseline_snapshot):
        offsets = cycle_offsets(baseline_snapshot, reference_phase=1.0)
        with pytest.raises(ValueError, match="reference_phase"):
            delay_spread_upper_min(baseline_snapshot, offsets)


class TestReports:

    def test_report_fields_are_consistent(self, baseline_snapshot):
        report = compute_report(baseline_snapshot,
                                proposed_phases(baseline_snapshot))
        assert report.strategy == "proposed"
        assert report.time == baseline_snapshot.time
        assert 0.0 <= report.gain_linear <= report.max_gain_linear
        assert report.gain_db == pytest.approx(
            10.0 * math.log10(report.gain_linear), rel=1e-12)
        assert report.doppler_spread_hz == 0.0
        assert report.delay_spread_s <= report.delay_spread_upper_s
        assert report.flagged_elements == 0

    def test_proposed_dominates_reversed_over_time(self, baseline_scenario,
                                                   baseline_grid):
        for t in np.arange(0.0, 61.0, 10.0):
            snap = snapshot(baseline_scenario, float(t), baseline_grid)
            proposed = compute_report(snap, proposed_phases(snap))
            reverse = compute_report(snap, reversed_phases(snap))
            assert proposed.gain_linear >= reverse.gain_linear

    def test_gain_db_of_zero_gain_is_negative_infinity(self):
        assert gain_to_db(0.0) == -math.inf
        assert gain_to_db(1e-3) == pytest.approx(-30.0, rel=1e-12)
