"""Element phase-shift design strategies and their effective delays.

Strategies:

* ``proposed``: lock every element to the anchor element's path. Each
  phase is the fractional carrier cycle of the delay offset to the anchor,
  scaled to radians. This aligns all cascade terms to one complex phase
  (maximum gain), makes all effective delay rates equal (zero Doppler
  spread), and keeps phases causal in [0, 2*pi).
* ``reversed``: all-zero phases, the priority-swapped baseline that makes
  the delay-spread upper bound smallest at the cost of gain control.
* ``explicit``: any user- or search-supplied grid in [0, 2*pi).

Delay offsets are always formed as a difference of delays before scaling
by the carrier frequency, so the fractional cycle keeps full double
precision (error well below 1e-6 cycles).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelSnapshot

TWO_PI = 2.0 * np.pi

PROPOSED = "proposed"
REVERSED = "reversed"
EXPLICIT = "explicit"
STRATEGIES = (PROPOSED, REVERSED, EXPLICIT)


@dataclass(frozen=True)
class PhaseAssignment:
    """Per-element phase shifts at one time instant.

    ``phases`` is (P, Q) in radians, each entry in [0, 2*pi).
    ``reference_element`` is set for the proposed strategy only.
    """

    time: float
    phases: np.ndarray
    strategy: str
    reference_element: tuple[int, int] | None = None

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if np.any(self.phases < 0.0) or np.any(self.phases >= TWO_PI):
            raise ValueError("phases must lie in [0, 2*pi)")


@dataclass(frozen=True)
class CycleOffsets:
    """Integer carrier-cycle offsets of each element to the anchor.

    ``delay_gap`` is the anchor delay minus the element delay, s.
    ``min_cycles`` is the smallest causal integer offset for the given
    anchor phase; ``relaxed_cycles`` drops the anchor-phase term, i.e.
    ``ceil(-carrier_frequency * delay_gap)``. Anchor entries are zero.
    """

    reference_element: tuple[int, int]
    reference_phase: float
    delay_gap: np.ndarray
    min_cycles: np.ndarray
    relaxed_cycles: np.ndarray


def _reference(snapshot: ChannelSnapshot, reference):
    if reference is None:
        reference = snapshot.scenario.reference()
    p0, q0 = int(reference[0]), int(reference[1])
    P, Q = snapshot.shape
    if not (1 <= p0 <= P and 1 <= q0 <= Q):
        raise ValueError(f"reference element {(p0, q0)} outside grid {P}x{Q}")
    return p0, q0


def offset_cycles(snapshot: ChannelSnapshot, reference=None) -> np.ndarray:
    """Delay offset to the anchor element, in carrier cycles (P, Q)."""
    p0, q0 = _reference(snapshot, reference)
    gap = snapshot.delay[p0 - 1, q0 - 1] - snapshot.delay
    return snapshot.scenario.carrier_frequency * gap


def proposed_phases(snapshot: ChannelSnapshot,
                    reference=None) -> PhaseAssignment:
    """Anchor-locked phase grid: fractional cycle of the delay offset.

    The fractional part uses the nonnegative-remainder convention, so
    negative offsets map into [0, 1) as well; the anchor element's phase
    is exactly zero.
    """
    p0, q0 = _reference(snapshot, reference)
    cycles = offset_cycles(snapshot, (p0, q0))
    frac = cycles - np.floor(cycles)
    # Rounding can lift the remainder of a tiny negative offset to 1.0.
    frac = np.where(frac >= 1.0, 0.0, frac)
    return PhaseAssignment(time=snapshot.time, phases=TWO_PI * frac,
                           strategy=PROPOSED, reference_element=(p0, q0))


def reversed_phases(snapshot: ChannelSnapshot) -> PhaseAssignment:
    """All-zero phase grid (spread-bound-first baseline)."""
    return PhaseAssignment(time=snapshot.time,
                           phases=np.zeros(snapshot.shape),
                           strategy=REVERSED)


def explicit_phases(snapshot: ChannelSnapshot, phases) -> PhaseAssignment:
    """Wrap a user-supplied grid; entries must already lie in [0, 2*pi)."""
    phases = np.asarray(phases, dtype=float)
    if phases.shape != snapshot.shape:
        raise ValueError(
            f"phase grid {phases.shape} does not match snapshot "
            f"{snapshot.shape}")
    return PhaseAssignment(time=snapshot.time, phases=phases,
                           strategy=EXPLICIT)


def cycle_offsets(snapshot: ChannelSnapshot, reference=None,
                  reference_phase: float = 0.0) -> CycleOffsets:
    """Integer cycle offsets for a given anchor element and anchor phase.

    ``reference_phase`` is the anchor element's own phase in [0, 2*pi].
    """
    if not 0.0 <= reference_phase <= TWO_PI:
        raise ValueError("reference_phase must lie in [0, 2*pi]")
    p0, q0 = _reference(snapshot, reference)
    gap = snapshot.delay[p0 - 1, q0 - 1] - snapshot.delay
    cycles = snapshot.scenario.carrier_frequency * gap
    relaxed = np.ceil(-cycles)
    minimum = np.ceil(-cycles - reference_phase / TWO_PI)
    return CycleOffsets(reference_element=(p0, q0),
                        reference_phase=float(reference_phase),
                        delay_gap=gap,
                        min_cycles=minimum.astype(np.int64),
                        relaxed_cycles=relaxed.astype(np.int64))


def effective_delay(snapshot: ChannelSnapshot,
                    assignment: PhaseAssignment) -> np.ndarray:
    """Per-element delay including the phase-shift contribution, s.

    ``delay + phases / (2*pi*carrier_frequency)``. Under the proposed
    strategy every entry lands on the anchor delay minus an integer
    number of carrier periods.
    """
    _check_pair(snapshot, assignment)
    return snapshot.delay + assignment.phases \
        / (TWO_PI * snapshot.scenario.carrier_frequency)


def effective_delay_rate(snapshot: ChannelSnapshot,
                         assignment: PhaseAssignment,
                         guard_window: float = 1e-9):
    """Analytic rate of the (unwrapped) effective delay, with wrap flags.

    For the proposed strategy the unwrapped effective delay is the anchor
    delay shifted by a piecewise-constant integer number of carrier
    periods, so its rate equals the anchor's delay rate for every element
    except at the isolated wrap instants. Elements whose delay offset sits
    within ``guard_window`` seconds of such a wrap instant are flagged;
    callers should exclude them from spread extrema.

    Returns:
        (rates, flagged): (P, Q) float and bool arrays. The reversed
        strategy never flags anything.

    Raises:
        ValueError: for explicit assignments (no rate model).
    """
    _check_pair(snapshot, assignment)
    if assignment.strategy == REVERSED:
        return snapshot.delay_rate, np.zeros(snapshot.shape, dtype=bool)
    if assignment.strategy != PROPOSED:
        raise ValueError(
            "effective delay rates are defined for the proposed and "
            "reversed strategies only")
    p0, q0 = assignment.reference_element
    rate_ref = snapshot.delay_rate[p0 - 1, q0 - 1]
    rates = np.full(snapshot.shape, rate_ref)
    cycles = offset_cycles(snapshot, (p0, q0))
    cycle_rate = snapshot.scenario.carrier_frequency \
        * (rate_ref - snapshot.delay_rate)
    to_wrap = np.abs(cycles - np.round(cycles))
    flagged = to_wrap < np.abs(cycle_rate) * guard_window
    return rates, flagged


def _check_pair(snapshot: ChannelSnapshot, assignment: PhaseAssignment):
    if assignment.phases.shape != snapshot.shape:
        raise ValueError(
            f"assignment grid {assignment.phases.shape} does not match "
            f"snapshot {snapshot.shape}")
    if assignment.time != snapshot.time:
        raise ValueError(
            f"assignment time {assignment.time} does not match snapshot "
            f"time {snapshot.time}")
