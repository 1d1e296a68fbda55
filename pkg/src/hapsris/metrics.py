"""Objective metrics for a (snapshot, phase assignment) pair.

Covers the received-power ratio of the coherent element sum, its
assignment-independent upper bound, the Doppler spread of the effective
delay rates, the delay spread, and the delay-spread upper bound together
with its closed-form minimum. All reductions use a fixed, deterministic
order so repeated runs are bit-identical regardless of worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelSnapshot
from .phases import (PROPOSED, REVERSED, TWO_PI, CycleOffsets,
                     PhaseAssignment, effective_delay, effective_delay_rate,
                     proposed_phases, reversed_phases)


def pairwise_sum(values: np.ndarray):
    """Deterministic pairwise tree reduction over row-major order.

    Adjacent pairs are folded repeatedly (odd tail carried through), so the
    reduction tree depends only on the element count, never on threading
    or platform reduction heuristics.
    """
    acc = np.ravel(values)
    while acc.size > 1:
        even = acc.size - (acc.size % 2)
        folded = acc[0:even:2] + acc[1:even:2]
        if acc.size % 2:
            folded = np.concatenate([folded, acc[-1:]])
        acc = folded
    return acc[0]


@dataclass(frozen=True)
class MetricsReport:
    """All objective values for one (strategy, time) pair."""

    time: float
    strategy: str
    gain_linear: float
    gain_db: float
    doppler_spread_hz: float
    delay_spread_s: float
    delay_spread_upper_s: float
    max_gain_linear: float
    flagged_elements: int = 0


def gain_to_db(gain_linear: float) -> float:
    """Power gain in dB; zero gain maps to -inf (writers apply a sentinel)."""
    if gain_linear <= 0.0:
        return -math.inf
    return 10.0 * math.log10(gain_linear)


def channel_gain(snapshot: ChannelSnapshot,
                 assignment: PhaseAssignment) -> float:
    """Received-power ratio: squared modulus of the coherent element sum.

    Each element contributes its cascade amplitude rotated by the carrier
    phase of its delay plus its applied phase shift. The carrier phase is
    reduced to its fractional cycle before the complex exponential to keep
    the angle accurate at large delay-times-frequency products.
    """
    _check_pair(snapshot, assignment)
    cycles = snapshot.scenario.carrier_frequency * snapshot.delay
    frac = cycles - np.floor(cycles)
    terms = snapshot.amplitude * np.exp(-1j * (TWO_PI * frac
                                               + assignment.phases))
    total = pairwise_sum(terms)
    return float(total.real ** 2 + total.imag ** 2)


def max_channel_gain(snapshot: ChannelSnapshot) -> float:
    """Upper bound on the gain over all assignments: (sum of amplitudes)^2."""
    total = pairwise_sum(snapshot.amplitude)
    return float(total) ** 2


def doppler_spread(snapshot: ChannelSnapshot, assignment: PhaseAssignment,
                   guard_window: float = 1e-9) -> float:
    """Carrier frequency times the spread of effective delay rates, Hz.

    The max-minus-min shortcut over elements equals the largest pairwise
    rate difference exactly (floating-point subtraction is monotone).
    Wrap-flagged elements are excluded from the extrema.
    """
    rates, flagged = effective_delay_rate(snapshot, assignment, guard_window)
    valid = rates[~flagged]
    if valid.size == 0:
        return 0.0
    return snapshot.scenario.carrier_frequency \
        * float(valid.max() - valid.min())


def doppler_spread_split(snapshot: ChannelSnapshot,
                         assignment: PhaseAssignment,
                         guard_window: float = 1e-9) -> tuple[float, float]:
    """Diagnostic split of the Doppler spread, Hz.

    Returns (anchor_vs_rest, rest_vs_rest): the largest rate difference
    between the anchor element and any other, and among the others only.
    The overall spread is the maximum of the two.
    """
    rates, flagged = effective_delay_rate(snapshot, assignment, guard_window)
    ref = assignment.reference_element or snapshot.scenario.reference()
    p0, q0 = ref
    fc = snapshot.scenario.carrier_frequency
    rate_ref = rates[p0 - 1, q0 - 1]
    others = np.ones(snapshot.shape, dtype=bool)
    others[p0 - 1, q0 - 1] = False
    others &= ~flagged
    rest = rates[others]
    if rest.size == 0:
        return 0.0, 0.0
    ref_vs_rest = fc * float(np.max(np.abs(rest - rate_ref)))
    rest_vs_rest = fc * float(rest.max() - rest.min())
    return ref_vs_rest, rest_vs_rest


def delay_spread(snapshot: ChannelSnapshot,
                 assignment: PhaseAssignment) -> float:
    """Spread of the effective delays, s."""
    eff = effective_delay(snapshot, assignment)
    return float(eff.max() - eff.min())


def delay_spread_upper(snapshot: ChannelSnapshot,
                       assignment: PhaseAssignment) -> float:
    """Upper bound on the delay spread, s.

    Identical to :func:`delay_spread` except that the minimum is taken
    over the raw delays (phase term dropped), which can only widen it.
    """
    eff = effective_delay(snapshot, assignment)
    return float(eff.max() - snapshot.delay.min())


def delay_spread_upper_min(snapshot: ChannelSnapshot,
                           offsets: CycleOffsets) -> float:
    """Closed-form minimum of the delay-spread upper bound, s.

    Evaluates the bound directly from the relaxed integer cycle offsets:
    the largest of the anchor delay and the anchor delay shifted by each
    element's relaxed offset in carrier periods, minus the smallest raw
    delay. Must match :func:`delay_spread_upper` under proposed phases.
    """
    if offsets.reference_phase != 0.0:
        raise ValueError("closed-form bound requires reference_phase = 0")
    p0, q0 = offsets.reference_element
    delay_ref = snapshot.delay[p0 - 1, q0 - 1]
    shifted = delay_ref + offsets.relaxed_cycles \
        / snapshot.scenario.carrier_frequency
    return float(shifted.max() - snapshot.delay.min())


def compute_report(snapshot: ChannelSnapshot, assignment: PhaseAssignment,
                   guard_window: float = 1e-9) -> MetricsReport:
    """Evaluate every metric for one assignment."""
    rates, flagged = effective_delay_rate(snapshot, assignment, guard_window)
    valid = rates[~flagged]
    fc = snapshot.scenario.carrier_frequency
    doppler = fc * float(valid.max() - valid.min()) if valid.size else 0.0
    gain = channel_gain(snapshot, assignment)
    return MetricsReport(
        time=snapshot.time,
        strategy=assignment.strategy,
        gain_linear=gain,
        gain_db=gain_to_db(gain),
        doppler_spread_hz=doppler,
        delay_spread_s=delay_spread(snapshot, assignment),
        delay_spread_upper_s=delay_spread_upper(snapshot, assignment),
        max_gain_linear=max_channel_gain(snapshot),
        flagged_elements=int(np.count_nonzero(flagged)))


def reports_for_strategies(snapshot: ChannelSnapshot, strategies,
                           reference=None) -> list[MetricsReport]:
    """Reports for a sequence of strategy names against one snapshot."""
    out = []
    for name in strategies:
        if name == PROPOSED:
            assignment = proposed_phases(snapshot, reference)
        elif name == REVERSED:
            assignment = reversed_phases(snapshot)
        else:
            raise ValueError(f"unknown strategy {name!r}")
        out.append(compute_report(snapshot, assignment))
    return out


def _check_pair(snapshot, assignment):
    if assignment.phases.shape != snapshot.shape:
        raise ValueError(
            f"assignment grid {assignment.phases.shape} does not match "
            f"snapshot {snapshot.shape}")
    if assignment.time != snapshot.time:
        raise ValueError(
            f"assignment time {assignment.time} does not match snapshot "
            f"time {snapshot.time}")
