"""Phase strategies, causality, cycle offsets, and effective delays."""

import numpy as np
import pytest

from hapsris import (ChannelSnapshot, cycle_offsets, effective_delay,
                     effective_delay_rate, explicit_phases, proposed_phases,
                     reversed_phases, snapshot)
from hapsris.phases import PROPOSED, REVERSED, TWO_PI, PhaseAssignment

from conftest import make_scenario, make_tiny


def synthetic_snapshot(delays, scenario=None, rates=None, amplitudes=None,
                       t=0.0):
    """Snapshot with hand-picked delays, for exercising the phase math."""
    if scenario is None:
        scenario = make_tiny(1, 1)
    delays = np.atleast_2d(np.asarray(delays, dtype=float))
    if rates is None:
        rates = np.zeros_like(delays)
    if amplitudes is None:
        amplitudes = np.ones_like(delays)
    return ChannelSnapshot(time=t,
                           amplitude=np.atleast_2d(np.asarray(amplitudes,
                                                              dtype=float)),
                           delay=delays,
                           delay_rate=np.atleast_2d(np.asarray(rates,
                                                               dtype=float)),
                           scenario=scenario, kinematics=None)


class TestProposedPhases:

    def test_anchor_phase_is_exactly_zero(self, baseline_snapshot):
        assignment = proposed_phases(baseline_snapshot)
        p0, q0 = assignment.reference_element
        assert assignment.phases[p0 - 1, q0 - 1] == 0.0

    def test_fractional_cycle_values(self):
        # Anchor delay minus element delay of +2.25 and -0.25 carrier
        # cycles must map to pi/2 and 3*pi/2.
        fc = 2e9
        snap = synthetic_snapshot([[0.0001 - 2.25 / fc, 0.0001,
                                    0.0001 + 0.25 / fc]])
        assignment = proposed_phases(snap, reference=(1, 2))
        np.testing.assert_allclose(
            assignment.phases[0], [np.pi / 2.0, 0.0, 3.0 * np.pi / 2.0],
            rtol=1e-9, atol=1e-12)

    def test_equal_delays_give_zero_phase(self):
        snap = synthetic_snapshot([[2e-4, 2e-4, 2e-4]])
        assignment = proposed_phases(snap, reference=(1, 1))
        assert np.all(assignment.phases == 0.0)

    def test_causality_over_time_grid(self, baseline_scenario,
                                      baseline_grid):
        for t in np.arange(0.0, 61.0, 6.0):
            snap = snapshot(baseline_scenario, float(t), baseline_grid)
            phases = proposed_phases(snap).phases
            assert phases.min() >= 0.0
            assert phases.max() < TWO_PI

    def test_wrap_rounding_never_reaches_two_pi(self):
        # Sweep delays one ulp at a time across an exact integer-cycle
        # offset; the nonnegative remainder may round to 1.0 there and
        # must be folded back to zero phase.
        fc = 2e9
        base = 1.5e-4
        target = base + 3.0 / fc
        for steps in range(-40, 41):
            shifted = target
            for _ in range(abs(steps)):
                shifted = np.nextafter(shifted,
                                       np.inf if steps > 0 else -np.inf)
            snap = synthetic_snapshot([[base, shifted]])
            phases = proposed_phases(snap, reference=(1, 1)).phases
            assert 0.0 <= phases[0, 1] < TWO_PI

    def test_invalid_reference_is_rejected(self, baseline_snapshot):
        with pytest.raises(ValueError, match="reference"):
            proposed_phases(baseline_snapshot, reference=(0, 1))


class TestOtherStrategies:

    def test_reversed_is_all_zero(self, baseline_snapshot):
        assignment = reversed_phases(baseline_snapshot)
        assert assignment.strategy == REVERSED
        assert np.all(assignment.phases == 0.0)

    def test_explicit_accepts_lattice_grids(self, baseline_snapshot):
        grid = np.full(baseline_snapshot.shape, np.pi)
        assignment = explicit_phases(baseline_snapshot, grid)
        assert assignment.strategy == "explicit"

    def test_explicit_rejects_out_of_range(self, baseline_snapshot):
        grid = np.zeros(baseline_snapshot.shape)
        grid[0, 0] = TWO_PI
        with pytest.raises(ValueError, match="2\\*pi"):
            explicit_phases(baseline_snapshot, grid)
        grid[0, 0] = -0.1
        with pytest.raises(ValueError):
            explicit_phases(baseline_snapshot, grid)

    def test_explicit_rejects_shape_mismatch(self, baseline_snapshot):
        with pytest.raises(ValueError, match="match"):
            explicit_phases(baseline_snapshot, np.zeros((2, 2)))


class TestCycleOffsets:

    @pytest.mark.parametrize("cycles,expected_relaxed", [
        (2.25, -2), (-0.25, 1), (0.0, 0)])
    def test_relaxed_offset_examples(self, cycles, expected_relaxed):
        fc = 2e9
        snap = synthetic_snapshot([[1e-4, 1e-4 - cycles / fc]])
        offsets = cycle_offsets(snap, reference=(1, 1))
        assert offsets.relaxed_cycles[0, 1] == expected_relaxed
        assert offsets.min_cycles[0, 1] == expected_relaxed

    def test_minimum_shifts_with_anchor_phase(self):
        fc = 2e9
        snap = synthetic_snapshot([[1e-4, 1e-4 - 2.25 / fc]])
        offsets = cycle_offsets(snap, reference=(1, 1),
                                reference_phase=np.pi)
        # ceil(-2.25 - 0.5) = -2
        assert offsets.min_cycles[0, 1] == -2
        offsets = cycle_offsets(snap, reference=(1, 1),
                                reference_phase=1.99 * np.pi)
        # ceil(-2.25 - 0.995) = -3
        assert offsets.min_cycles[0, 1] == -3

    def test_ordering_invariant_for_any_anchor_phase(self, baseline_snapshot,
                                                     rng):
        for phase in rng.uniform(0.0, TWO_PI, size=8):
            offsets = cycle_offsets(baseline_snapshot,
                                    reference_phase=float(phase))
            assert np.all(offsets.min_cycles <= offsets.relaxed_cycles)
            assert np.all(offsets.relaxed_cycles <= offsets.min_cycles + 1)

    def test_relaxed_matches_ceiling_identity(self, baseline_snapshot):
        offsets = cycle_offsets(baseline_snapshot)
        fc = baseline_snapshot.scenario.carrier_frequency
        expected = np.ceil(-fc * offsets.delay_gap)
        np.testing.assert_array_equal(offsets.relaxed_cycles, expected)

    def test_anchor_phase_range_is_validated(self, baseline_snapshot):
        with pytest.raises(ValueError, match="reference_phase"):
            cycle_offsets(baseline_snapshot, reference_phase=-0.1)
        with pytest.raises(ValueError, match="reference_phase"):
            cycle_offsets(baseline_snapshot, reference_phase=7.0)


class TestEffectiveDelay:

    def test_anchor_entry_is_the_anchor_delay(self, baseline_snapshot):
        assignment = proposed_phases(baseline_snapshot)
        p0, q0 = assignment.reference_element
        eff = effective_delay(baseline_snapshot, assignment)
        assert eff[p0 - 1, q0 - 1] == baseline_snapshot.delay[p0 - 1, q0 - 1]

    def test_reversed_leaves_raw_delays(self, baseline_snapshot):
        eff = effective_delay(baseline_snapshot,
                              reversed_phases(baseline_snapshot))
        np.testing.assert_array_equal(eff, baseline_snapshot.delay)

    def test_proposed_lands_on_the_carrier_period_lattice(
            self, baseline_scenario, baseline_grid, rng):
        fc = baseline_scenario.carrier_frequency
        for t in rng.uniform(0.0, 60.0, size=10):
            snap = snapshot(baseline_scenario, float(t), baseline_grid)
            assignment = proposed_phases(snap)
            p0, q0 = assignment.reference_element
            delay_ref = snap.delay[p0 - 1, q0 - 1]
            eff = effective_delay(snap, assignment)
            cycles = (eff - delay_ref) * fc
            np.testing.assert_allclose(cycles, np.round(cycles),
                                       atol=1e-12 * delay_ref * fc)

    def test_time_mismatch_is_rejected(self, baseline_scenario,
                                       baseline_grid, baseline_snapshot):
        other = snapshot(baseline_scenario, 11.0, baseline_grid)
        assignment = proposed_phases(other)
        with pytest.raises(ValueError, match="time"):
            effective_delay(baseline_snapshot, assignment)


class TestEffectiveDelayRate:

    def test_proposed_rates_all_equal_the_anchor_rate(self,
                                                      baseline_snapshot):
        assignment = proposed_phases(baseline_snapshot)
        p0, q0 = assignment.reference_element
        rates, flagged = effective_delay_rate(baseline_snapshot, assignment)
        assert np.all(rates == baseline_snapshot.delay_rate[p0 - 1, q0 - 1])
        assert not flagged[p0 - 1, q0 - 1]

    def test_reversed_rates_are_the_raw_rates(self, baseline_snapshot):
        rates, flagged = effective_delay_rate(
            baseline_snapshot, reversed_phases(baseline_snapshot))
        np.testing.assert_array_equal(rates, baseline_snapshot.delay_rate)
        assert not flagged.any()

    def test_stationary_reversed_rates_are_zero(self):
        scn = make_scenario(10.0, speed=0.0)
        snap = snapshot(scn, 10.0)
        rates, _ = effective_delay_rate(snap, reversed_phases(snap))
        assert np.all(rates == 0.0)

    def test_explicit_strategy_has_no_rate_model(self, baseline_snapshot):
        assignment = explicit_phases(baseline_snapshot,
                                     np.zeros(baseline_snapshot.shape))
        with pytest.raises(ValueError, match="proposed and"):
            effective_delay_rate(baseline_snapshot, assignment)

    def test_elements_near_a_wrap_instant_are_flagged(self):
        # Element 2 sits exactly on an integer cycle offset while its rate
        # differs from the anchor's, so a wrap crossing is imminent.
        fc = 2e9
        snap = synthetic_snapshot([[1e-4, 1e-4 - 2.0 / fc, 1e-4 - 2.3 / fc]],
                                  rates=[[0.0, 1e-8, 1e-8]])
        assignment = proposed_phases(snap, reference=(1, 1))
        _, flagged = effective_delay_rate(snap, assignment,
                                          guard_window=1e-6)
        assert bool(flagged[0, 1])
        assert not flagged[0, 0]
        assert not flagged[0, 2]

    def test_guard_window_scales_the_flag(self):
        fc = 2e9
        # 1e-4 cycles away from the wrap, closing at 20 cycles/s: the wrap
        # instant is 5e-6 s away.
        snap = synthetic_snapshot([[1e-4, 1e-4 - (2.0 + 1e-4) / fc]],
                                  rates=[[0.0, 1e-8]])
        assignment = proposed_phases(snap, reference=(1, 1))
        _, tight = effective_delay_rate(snap, assignment, guard_window=1e-6)
        _, loose = effective_delay_rate(snap, assignment, guard_window=1e-4)
        assert not tight[0, 1]
        assert bool(loose[0, 1])


class TestPhaseAssignmentType:

    def test_rejects_unknown_strategy(self):
        with pytest.raises(ValueError, match="strategy"):
            PhaseAssignment(time=0.0, phases=np.zeros((1, 1)),
                            strategy="greedy")

    def test_rejects_out_of_range_phases(self):
        with pytest.raises(ValueError):
            PhaseAssignment(time=0.0, phases=np.full((1, 1), -1.0),
                            strategy=PROPOSED)
