"""Independent validators: exhaustive phase search and finite differences.

These certify the closed-form design and the analytic derivatives on
small instances without sharing any code path with the quantities they
check. The exhaustive search enumerates every state of an M-level phase
lattice (M**N states for N elements), so it is capped at desk scale:
N <= 6 elements and M <= 32 levels, about 1.07e9 states at the limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelSnapshot, cascade_delay
from .errors import SearchSpaceGuardError, WrapInWindowError
from .phases import PROPOSED, REVERSED, TWO_PI, offset_cycles

MAX_ELEMENTS = 6
MAX_LEVELS = 32

# Enumerated objective values that differ from the running optimum by less
# than this relative margin are treated as ties of the exact optimum, so
# the reported state is the lexicographically smallest of them.
NEAR_TIE_REL = 1e-9

_BLOCK_ROWS = 128


@dataclass(frozen=True)
class DiscreteSearchResult:
    """Outcome of an exhaustive search over the M-level phase lattice."""

    levels: int
    best_phases: np.ndarray   # (P, Q) rad, multiples of 2*pi/levels
    best_gain: float
    states_searched: int


def brute_force_gain(snapshot: ChannelSnapshot,
                     levels: int) -> DiscreteSearchResult:
    """Maximize the received-power ratio over every lattice phase grid.

    Enumerates all ``levels**N`` grids in lexicographic order (element
    (1,1) most significant, row-major) via a split into leading and
    trailing digit halves. ``best_gain`` is the exact enumerated maximum;
    ``best_phases`` is the lexicographically first grid whose value is
    within ``NEAR_TIE_REL`` of it, which makes the reported grid stable
    under floating-point noise between mathematically tied states.

    Raises:
        SearchSpaceGuardError: above MAX_ELEMENTS elements or MAX_LEVELS
            levels.
    """
    n = snapshot.amplitude.size
    if n > MAX_ELEMENTS or levels > MAX_LEVELS:
        raise SearchSpaceGuardError(
            f"exhaustive search limited to {MAX_ELEMENTS} elements and "
            f"{MAX_LEVELS} levels; got {n} elements, {levels} levels")
    if levels < 1:
        raise ValueError("levels must be at least 1")

    fc = snapshot.scenario.carrier_frequency
    cycles = fc * snapshot.delay.ravel()
    frac = cycles - np.floor(cycles)
    weights = snapshot.amplitude.ravel() * np.exp(-1j * TWO_PI * frac)
    rotations = np.exp(-1j * TWO_PI * np.arange(levels) / levels)
    tables = weights[:, None] * rotations[None, :]  # (n, levels)

    n_lead = n // 2
    lead = _digit_sums(tables[:n_lead], levels)
    trail = _digit_sums(tables[n_lead:], levels)
    lead_re, lead_im = lead.real.copy(), lead.imag.copy()
    trail_re, trail_im = trail.real.copy(), trail.imag.copy()

    def _block_gains(start):
        re = lead_re[start:start + _BLOCK_ROWS, None] + trail_re[None, :]
        im = lead_im[start:start + _BLOCK_ROWS, None] + trail_im[None, :]
        return re * re + im * im

    best_gain = -math.inf
    for start in range(0, lead.size, _BLOCK_ROWS):
        best_gain = max(best_gain, float(_block_gains(start).max()))

    threshold = best_gain * (1.0 - NEAR_TIE_REL)
    best_index = None
    for start in range(0, lead.size, _BLOCK_ROWS):
        hits = np.argwhere(_block_gains(start) >= threshold)
        if hits.size:
            row, col = hits[0]
            best_index = ((start + int(row)), int(col))
            break
    assert best_index is not None

    digits = np.empty(n, dtype=np.int64)
    if n_lead:
        digits[:n_lead] = np.unravel_index(best_index[0], (levels,) * n_lead)
    digits[n_lead:] = np.unravel_index(best_index[1], (levels,) * (n - n_lead))
    best_phases = (TWO_PI * digits / levels).reshape(snapshot.shape)
    return DiscreteSearchResult(levels=int(levels), best_phases=best_phases,
                                best_gain=best_gain,
                                states_searched=levels ** n)


def _digit_sums(tables: np.ndarray, levels: int) -> np.ndarray:
    """All partial sums over a digit block, lexicographic (first digit
    most significant). Zero digits yield the single empty sum."""
    sums = np.zeros(1, dtype=complex)
    for row in tables:
        sums = (sums[:, None] + row[None, :]).ravel()
    return sums


def finite_diff_delay_rate(kinematics, scenario, t, step: float):
    """Central-difference estimate of the cascade delay rate.

    Second-order accurate in ``step``; used to validate the analytic rate.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    ahead = cascade_delay(kinematics, scenario, t + step)
    behind = cascade_delay(kinematics, scenario, t - step)
    return (ahead - behind) / (2.0 * step)


def finite_diff_doppler(snap_minus: ChannelSnapshot,
                        snap_plus: ChannelSnapshot,
                        strategy: str,
                        reference=None,
                        guard_window: float = 1e-9) -> float:
    """Doppler spread from finite differences of the effective delays, Hz.

    For the proposed strategy the per-element phase is continued across
    the window (fractional-cycle difference wrapped to (-1/2, 1/2]), which
    is valid only when no element wraps inside the window; a wrap there
    raises so the caller can resample the center time.

    Raises:
        WrapInWindowError: some element's integer cycle count changes
            between the two snapshot times (or sits within the guard
            window of doing so).
    """
    window = snap_plus.time - snap_minus.time
    if window <= 0.0:
        raise ValueError("snapshots must be ordered in time")
    fc = snap_minus.scenario.carrier_frequency
    delta_delay = snap_plus.delay - snap_minus.delay
    if strategy == REVERSED:
        rates = delta_delay / window
    elif strategy == PROPOSED:
        cyc_minus = offset_cycles(snap_minus, reference)
        cyc_plus = offset_cycles(snap_plus, reference)
        crossed = np.floor(cyc_minus) != np.floor(cyc_plus)
        cycle_rate = (cyc_plus - cyc_minus) / window
        near = np.minimum(np.abs(cyc_minus - np.round(cyc_minus)),
                          np.abs(cyc_plus - np.round(cyc_plus)))
        grazing = near < np.abs(cycle_rate) * guard_window
        bad = int(np.count_nonzero(crossed | grazing))
        if bad:
            raise WrapInWindowError(
                f"{bad} element(s) wrap between t={snap_minus.time} s and "
                f"t={snap_plus.time} s; resample the center time")
        frac_minus = cyc_minus - np.floor(cyc_minus)
        frac_plus = cyc_plus - np.floor(cyc_plus)
        delta_frac = frac_plus - frac_minus
        delta_frac = delta_frac - np.round(delta_frac)
        rates = (delta_delay + delta_frac / fc) / window
    else:
        raise ValueError(
            "finite-difference Doppler is defined for the proposed and "
            "reversed strategies only")
    return fc * float(rates.max() - rates.min())
