"""Two-hop cascade channel through each reflecting element.

For every element the Tx -> element -> Rx path contributes an amplitude
(the product of both hops' free-space amplitude gains), a delay (total
path length over the speed of light), and an analytic delay rate. A
:class:`ChannelSnapshot` materializes all three over the full grid at one
time instant; everything is a pure function of the scenario and t.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GeometryGuardError
from .geometry import (ElementKinematics, Scenario, build_grid,
                       element_position, element_velocity)


@dataclass(frozen=True)
class ElementChannel:
    """Cascade quantities of a single element at one time instant."""

    p: int
    q: int
    amplitude: float    # dimensionless cascade amplitude, >= 0
    delay: float        # cascade path delay, s
    delay_rate: float   # d(delay)/dt, dimensionless


@dataclass(frozen=True)
class ChannelSnapshot:
    """Cascade amplitude, delay, and delay rate over the grid at time t.

    The arrays are (P, Q), addressed ``[p-1, q-1]``, all evaluated at the
    same instant.
    """

    time: float
    amplitude: np.ndarray
    delay: np.ndarray
    delay_rate: np.ndarray
    scenario: Scenario
    kinematics: ElementKinematics

    @property
    def shape(self):
        return self.amplitude.shape

    def element(self, p: int, q: int) -> ElementChannel:
        """Scalar view of element (p, q), 1-based indices."""
        if not (1 <= p <= self.shape[0] and 1 <= q <= self.shape[1]):
            raise IndexError(f"element ({p}, {q}) outside grid {self.shape}")
        return ElementChannel(
            p=p, q=q,
            amplitude=float(self.amplitude[p - 1, q - 1]),
            delay=float(self.delay[p - 1, q - 1]),
            delay_rate=float(self.delay_rate[p - 1, q - 1]))


def element_gain(theta, scenario: Scenario):
    """Boresight-cosine gain of an element toward elevation angle theta.

    ``(4*pi / wavelength**2) * element_area * cos(theta)`` for theta below
    pi/2, and exactly 0 for theta in [pi/2, pi] (no response behind the
    panel). Azimuth does not enter this model.
    """
    theta = np.asarray(theta, dtype=float)
    peak = (4.0 * np.pi / scenario.wavelength ** 2) \
        * scenario.element_length * scenario.element_width
    return np.where(theta < np.pi / 2.0, peak * np.cos(theta), 0.0)


def friis_cascade(wavelength, tx_distance, rx_distance,
                  tx_element_gain, rx_element_gain,
                  tx_station_gain=1.0, rx_station_gain=1.0):
    """Two-hop free-space amplitude with all four gains under one root.

    With fixed gains the amplitude scales as 1/(tx_distance*rx_distance).
    Tx and Rx quantities are combined pairwise first, so swapping the two
    stations reproduces the amplitude bit for bit.
    """
    gains = (np.asarray(tx_station_gain, dtype=float) * rx_station_gain) \
        * (tx_element_gain * rx_element_gain)
    return wavelength ** 2 \
        / (16.0 * np.pi ** 2 * (tx_distance * rx_distance)) * np.sqrt(gains)


def _station_view(kinematics, scenario, t):
    """Per-station distance, boresight cosine, and range rate arrays."""
    pos = element_position(kinematics, scenario, t)
    vel = element_velocity(kinematics, scenario, t)
    views = []
    for station in (scenario.tx_position, scenario.rx_position):
        delta = pos - station  # station -> element
        dist = np.linalg.norm(delta, axis=-1)
        _check_distance(dist, kinematics, scenario)
        cos_theta = (station[2] - pos[..., 2]) / dist
        range_rate = np.sum(delta * vel, axis=-1) / dist
        views.append((dist, cos_theta, range_rate))
    return views


def _check_distance(dist, kinematics, scenario):
    bad = np.asarray(dist) < scenario.min_station_distance
    if np.any(bad):
        idx = np.argwhere(bad)[0]
        p = np.asarray(kinematics.p)[tuple(idx)] if idx.size else kinematics.p
        q = np.asarray(kinematics.q)[tuple(idx)] if idx.size else kinematics.q
        raise GeometryGuardError(
            f"element ({int(p)}, {int(q)}) is within "
            f"{scenario.min_station_distance} m of a station")


def cascade_amplitude(kinematics: ElementKinematics, scenario: Scenario, t):
    """Cascade amplitude(s) at time t; zero when either hop sees the
    station at or behind the panel plane (elevation >= pi/2)."""
    (d_tx, cos_tx, _), (d_rx, cos_rx, _) = _station_view(
        kinematics, scenario, t)
    lam = scenario.wavelength
    peak = (4.0 * np.pi / lam ** 2) * scenario.element_length \
        * scenario.element_width
    g_tx = np.where(cos_tx > 0.0, peak * cos_tx, 0.0)
    g_rx = np.where(cos_rx > 0.0, peak * cos_rx, 0.0)
    return friis_cascade(lam, d_tx, d_rx, g_tx, g_rx,
                         scenario.tx_gain, scenario.rx_gain)


def cascade_delay(kinematics: ElementKinematics, scenario: Scenario, t):
    """Cascade path delay(s) at time t: both hop lengths over c."""
    pos = element_position(kinematics, scenario, t)
    d_tx = np.linalg.norm(pos - scenario.tx_position, axis=-1)
    d_rx = np.linalg.norm(pos - scenario.rx_position, axis=-1)
    return (d_tx + d_rx) / scenario.light_speed


def cascade_delay_rate(kinematics: ElementKinematics, scenario: Scenario, t):
    """Analytic time derivative of the cascade delay at time t.

    Chain rule on both hop lengths: the rate is the sum over stations of
    the element velocity projected on the station-to-element unit vector,
    divided by c. No numerical differentiation is involved; the magnitude
    is bounded by ``2 * speed / c``.
    """
    (_, _, rr_tx), (_, _, rr_rx) = _station_view(kinematics, scenario, t)
    return (rr_tx + rr_rx) / scenario.light_speed


def snapshot(scenario: Scenario, t: float,
             kinematics: ElementKinematics | None = None) -> ChannelSnapshot:
    """Evaluate the full cascade grid at time t.

    Args:
        scenario: validated scenario.
        t: time instant, s.
        kinematics: optional pre-built grid (rebuilt when omitted).

    Raises:
        GeometryGuardError: when a station violates the minimum-distance
            guard, with the offending element index in the message.
    """
    if kinematics is None:
        kinematics = build_grid(scenario)
    (d_tx, cos_tx, rr_tx), (d_rx, cos_rx, rr_rx) = _station_view(
        kinematics, scenario, t)
    lam = scenario.wavelength
    peak = (4.0 * np.pi / lam ** 2) * scenario.element_length \
        * scenario.element_width
    g_tx = np.where(cos_tx > 0.0, peak * cos_tx, 0.0)
    g_rx = np.where(cos_rx > 0.0, peak * cos_rx, 0.0)
    amplitude = friis_cascade(lam, d_tx, d_rx, g_tx, g_rx,
                              scenario.tx_gain, scenario.rx_gain)
    delay = (d_tx + d_rx) / scenario.light_speed
    delay_rate = (rr_tx + rr_rx) / scenario.light_speed
    return ChannelSnapshot(time=float(t), amplitude=amplitude, delay=delay,
                           delay_rate=delay_rate, scenario=scenario,
                           kinematics=kinematics)
