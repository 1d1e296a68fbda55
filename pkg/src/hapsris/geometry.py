"""Orbit geometry of the reflecting elements on a circling platform.

The platform flies a circle of radius ``orbit_radius`` in the xy-plane,
centered at the origin, at constant speed. The reflecting surface is a
rectangular panel of P x Q elements lying in that plane, so every element
rides its own circle concentric with the platform's. This module derives
those per-element circles and evaluates time-parameterized positions,
velocities, distances, and look angles toward the ground stations.

Conventions: strict SI units (m, s, Hz, rad) everywhere. Element indices
(p, q) are 1-based; grids are stored as (P, Q) arrays with ``[p-1, q-1]``
addressing, so the flattened row-major order runs q fastest. The ground
stations sit at positive z in this frame, and element boresight gain is
nonzero only for elevation angles below pi/2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s


@dataclass(frozen=True)
class Scenario:
    """Full physical configuration of one platform/panel/station layout.

    Args:
        carrier_frequency: carrier frequency, Hz.
        orbit_radius: radius of the platform's circular path, m.
        speed: platform speed along the path, m/s (0 allowed).
        ris_length: panel length along the local x axis, m.
        ris_width: panel width along the local y axis, m.
        element_length: element size along x, m.
        element_width: element size along y, m.
        tx_position, rx_position: ground station coordinates, m, in the
            panel-centered frame (stations at positive z).
        reference_element: 1-based (p0, q0) anchor element, or None to use
            the central element of the grid.
        tx_gain, rx_gain: dimensionless station antenna gains.
        min_station_distance: smallest allowed station-to-element distance
            before the geometry is treated as degenerate, m.
    """

    carrier_frequency: float
    orbit_radius: float
    speed: float
    ris_length: float
    ris_width: float
    element_length: float
    element_width: float
    tx_position: np.ndarray
    rx_position: np.ndarray
    reference_element: tuple[int, int] | None = None
    tx_gain: float = 1.0
    rx_gain: float = 1.0
    min_station_distance: float = 1.0

    def __post_init__(self):
        for name in ("carrier_frequency", "orbit_radius", "ris_length",
                     "ris_width", "element_length", "element_width"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if self.speed < 0.0:
            raise ValueError("speed must be nonnegative")
        if self.tx_gain < 0.0 or self.rx_gain < 0.0:
            raise ValueError("station gains must be nonnegative")
        if not self.min_station_distance > 0.0:
            raise ValueError("min_station_distance must be positive")
        for name in ("tx_position", "rx_position"):
            pos = np.asarray(getattr(self, name), dtype=float)
            if pos.shape != (3,):
                raise ValueError(f"{name} must be a 3-vector")
            object.__setattr__(self, name, pos)
        half_diagonal = math.hypot(self.ris_length / 2.0, self.ris_width / 2.0)
        if self.orbit_radius <= half_diagonal:
            raise ValueError(
                "orbit_radius must exceed the panel half-diagonal "
                f"({half_diagonal:.3f} m); got {self.orbit_radius} m")
        lam = self.wavelength
        # Recommended element size range; outside it is allowed but suspect.
        lo, hi = lam / 10.0, lam / 5.0
        slack = 1e-9 * lam
        for name in ("element_length", "element_width"):
            d = getattr(self, name)
            if d < lo - slack or d > hi + slack:
                warnings.warn(
                    f"{name}={d:.6g} m is outside the recommended range "
                    f"[{lo:.6g}, {hi:.6g}] m for wavelength {lam:.6g} m",
                    stacklevel=2)
        p0, q0 = self.reference()
        if not (1 <= p0 <= self.num_columns and 1 <= q0 <= self.num_rows):
            raise ValueError(
                f"reference_element {(p0, q0)} outside grid "
                f"{self.num_columns}x{self.num_rows}")

    @property
    def light_speed(self) -> float:
        return SPEED_OF_LIGHT

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_frequency

    @property
    def num_columns(self) -> int:
        """P, the number of element columns along the panel length."""
        return int(math.ceil(self.ris_length / self.element_length))

    @property
    def num_rows(self) -> int:
        """Q, the number of element rows along the panel width."""
        return int(math.ceil(self.ris_width / self.element_width))

    @property
    def num_elements(self) -> int:
        return self.num_columns * self.num_rows

    def reference(self) -> tuple[int, int]:
        """The anchor element, defaulting to the central grid element."""
        if self.reference_element is not None:
            p0, q0 = self.reference_element
            return int(p0), int(q0)
        return (math.ceil(self.num_columns / 2), math.ceil(self.num_rows / 2))


@dataclass(frozen=True)
class ElementKinematics:
    """Circular-path parameters of one element or of a whole (P, Q) grid.

    Fields are scalars for a single element or (P, Q) arrays for a grid;
    every function in this module accepts either form.

    Attributes:
        p, q: 1-based element indices.
        radius: radius of the element's circular path, m.
        angle_offset: angular position on that circle at t=0, rad, in
            (-pi/2, pi/2) by construction.
    """

    p: np.ndarray | int
    q: np.ndarray | int
    radius: np.ndarray | float
    angle_offset: np.ndarray | float

    @property
    def shape(self):
        return np.shape(self.radius)

    def at(self, p: int, q: int) -> "ElementKinematics":
        """Scalar view of element (p, q) from a grid, 1-based indices."""
        radius = np.asarray(self.radius)
        if not (1 <= p <= radius.shape[0] and 1 <= q <= radius.shape[1]):
            raise IndexError(f"element ({p}, {q}) outside grid {radius.shape}")
        return ElementKinematics(
            p=p, q=q,
            radius=float(radius[p - 1, q - 1]),
            angle_offset=float(np.asarray(self.angle_offset)[p - 1, q - 1]))


def build_grid(scenario: Scenario) -> ElementKinematics:
    """Derive the per-element path radius and angle offset for the panel.

    Element (p, q) sits at lateral offsets
    ``x = orbit_radius - length/2 + (p - 1/2) * element_length`` and
    ``y = -width/2 + (q - 1/2) * element_width`` when the platform crosses
    the positive x axis; its path radius is the norm of that offset pair
    and its angle offset the corresponding polar angle.

    Returns:
        ElementKinematics with (P, Q) arrays.

    Raises:
        ValueError: if any element's x offset is nonpositive, i.e. the
            element would sit on or across the rotation axis.
    """
    p = np.arange(1, scenario.num_columns + 1, dtype=float)[:, None]
    q = np.arange(1, scenario.num_rows + 1, dtype=float)[None, :]
    x_off = scenario.orbit_radius - scenario.ris_length / 2.0 \
        + (p - 0.5) * scenario.element_length
    y_off = -scenario.ris_width / 2.0 + (q - 0.5) * scenario.element_width
    if np.any(x_off <= 0.0):
        raise ValueError(
            "panel extends to or across the rotation axis; "
            "increase orbit_radius or shrink ris_length")
    radius = np.hypot(x_off, y_off)
    angle_offset = np.arctan2(np.broadcast_to(y_off, radius.shape),
                              np.broadcast_to(x_off, radius.shape))
    pp, qq = np.meshgrid(np.arange(1, scenario.num_columns + 1),
                         np.arange(1, scenario.num_rows + 1), indexing="ij")
    return ElementKinematics(p=pp, q=qq, radius=radius,
                             angle_offset=angle_offset)


def element_position(kinematics: ElementKinematics, scenario: Scenario,
                     t) -> np.ndarray:
    """Position(s) of the element(s) at time t, m.

    Pure circular motion in the xy-plane: the element traverses its own
    circle at the platform's linear speed, so its angular rate is
    ``speed / radius``. Shape: ``broadcast(kinematics, t) + (3,)``; the z
    component is exactly zero.
    """
    radius = np.asarray(kinematics.radius, dtype=float)
    arc = scenario.speed * np.asarray(t, dtype=float) / radius \
        + kinematics.angle_offset
    x = radius * np.cos(arc)
    y = radius * np.sin(arc)
    return np.stack([x, y, np.zeros_like(x)], axis=-1)


def element_velocity(kinematics: ElementKinematics, scenario: Scenario,
                     t) -> np.ndarray:
    """Velocity vector(s) of the element(s) at time t, m/s.

    Analytic derivative of :func:`element_position`; the Euclidean norm
    equals the platform speed for every element and time.
    """
    radius = np.asarray(kinematics.radius, dtype=float)
    arc = scenario.speed * np.asarray(t, dtype=float) / radius \
        + kinematics.angle_offset
    vx = -scenario.speed * np.sin(arc)
    vy = scenario.speed * np.cos(arc)
    return np.stack([vx, vy, np.zeros_like(vx)], axis=-1)


def link_distance(elem_pos: np.ndarray, station_pos: np.ndarray) -> np.ndarray:
    """Euclidean distance between element position(s) and a station, m."""
    delta = np.asarray(station_pos, dtype=float) - np.asarray(elem_pos,
                                                              dtype=float)
    return np.linalg.norm(delta, axis=-1)


def elevation_azimuth(elem_pos: np.ndarray,
                      station_pos: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Elevation and azimuth of a station as seen from element position(s).

    Returns:
        (theta, phi): elevation in [0, pi] measured from the +z axis, and
        azimuth in [0, 2*pi) measured in the xy-plane.

    Raises:
        ValueError: if any element-station distance is zero.
    """
    elem = np.asarray(elem_pos, dtype=float)
    station = np.asarray(station_pos, dtype=float)
    delta = station - elem
    dist = np.linalg.norm(delta, axis=-1)
    if np.any(dist <= 0.0):
        raise ValueError("station coincides with an element position")
    cos_theta = np.clip(delta[..., 2] / dist, -1.0, 1.0)
    theta = np.arccos(cos_theta)
    phi = np.mod(np.arctan2(delta[..., 1], delta[..., 0]), 2.0 * np.pi)
    # mod can round up to the divisor for tiny negative angles.
    phi = np.where(phi >= 2.0 * np.pi, 0.0, phi)
    return theta, phi
