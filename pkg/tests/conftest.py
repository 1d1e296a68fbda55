"""Shared fixtures: the production-like scenario and small variants."""

import numpy as np
import pytest

from hapsris import SPEED_OF_LIGHT, Scenario, build_grid, snapshot

CARRIER = 2e9
WAVELENGTH = SPEED_OF_LIGHT / CARRIER
PITCH = WAVELENGTH / 5.0
KMH = 1e3 / 3600.0

TX = np.array([-5000.0, 0.0, 20000.0])
RX = np.array([5000.0, 0.0, 20000.0])


def make_scenario(ris_length=10.0, ris_width=None, **overrides) -> Scenario:
    """Production-like scenario; width defaults to a twentieth of length."""
    params = dict(
        carrier_frequency=CARRIER,
        orbit_radius=3000.0,
        speed=110.0 * KMH,
        ris_length=ris_length,
        ris_width=ris_width if ris_width is not None else ris_length / 20.0,
        element_length=PITCH,
        element_width=PITCH,
        tx_position=TX.copy(),
        rx_position=RX.copy(),
    )
    params.update(overrides)
    return Scenario(**params)


def make_tiny(columns=2, rows=2, **overrides) -> Scenario:
    """Small exact grid: panel sized to an integer number of elements."""
    return make_scenario(ris_length=columns * PITCH,
                         ris_width=rows * PITCH, **overrides)


@pytest.fixture(scope="session")
def baseline_scenario():
    return make_scenario(10.0)


@pytest.fixture(scope="session")
def baseline_grid(baseline_scenario):
    return build_grid(baseline_scenario)


@pytest.fixture(scope="session")
def baseline_snapshot(baseline_scenario, baseline_grid):
    return snapshot(baseline_scenario, 10.0, baseline_grid)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260810)
