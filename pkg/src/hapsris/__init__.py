"""Cascade-channel simulator and phase-shift designer for a reflecting
surface carried on a circling high-altitude platform."""

__version__ = "0.1.0"

from .channel import (ChannelSnapshot, ElementChannel, cascade_amplitude,
                      cascade_delay, cascade_delay_rate, element_gain,
                      friis_cascade, snapshot)
from .config import RunConfig, load_config
from .errors import (ConfigError, GeometryGuardError, GuardError,
                     SearchSpaceGuardError, WrapInWindowError)
from .geometry import (SPEED_OF_LIGHT, ElementKinematics, Scenario,
                       build_grid, element_position, element_velocity,
                       elevation_azimuth, link_distance)
from .metrics import (MetricsReport, channel_gain, compute_report,
                      delay_spread, delay_spread_upper,
                      delay_spread_upper_min, doppler_spread,
                      doppler_spread_split, gain_to_db, max_channel_gain,
                      pairwise_sum)
from .oracle import (DiscreteSearchResult, brute_force_gain,
                     finite_diff_delay_rate, finite_diff_doppler)
from .phases import (EXPLICIT, PROPOSED, REVERSED, CycleOffsets,
                     PhaseAssignment, cycle_offsets, effective_delay,
                     effective_delay_rate, explicit_phases, offset_cycles,
                     proposed_phases, reversed_phases)

__all__ = [
    "__version__",
    "SPEED_OF_LIGHT", "Scenario", "ElementKinematics", "build_grid",
    "element_position", "element_velocity", "link_distance",
    "elevation_azimuth",
    "ChannelSnapshot", "ElementChannel", "element_gain", "friis_cascade",
    "cascade_amplitude", "cascade_delay", "cascade_delay_rate", "snapshot",
    "PROPOSED", "REVERSED", "EXPLICIT", "PhaseAssignment", "CycleOffsets",
    "proposed_phases", "reversed_phases", "explicit_phases", "offset_cycles",
    "cycle_offsets", "effective_delay", "effective_delay_rate",
    "MetricsReport", "pairwise_sum", "channel_gain", "max_channel_gain",
    "doppler_spread", "doppler_spread_split", "delay_spread",
    "delay_spread_upper", "delay_spread_upper_min", "gain_to_db",
    "compute_report",
    "DiscreteSearchResult", "brute_force_gain", "finite_diff_delay_rate",
    "finite_diff_doppler",
    "RunConfig", "load_config",
    "ConfigError", "GuardError", "GeometryGuardError",
    "SearchSpaceGuardError", "WrapInWindowError",
]
