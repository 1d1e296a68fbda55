"""Run configuration files: JSON with mandatory unit suffixes.

Every physical quantity is a string of the form ``"<number> <unit>"``
(for example ``"2 GHz"``, ``"3 km"``, ``"110 km/h"``, ``"-5 km"``); bare
numbers are rejected so units are always explicit. Dimensionless values
(station gains, element indices, quantization levels) are plain numbers.

Recognized keys::

    carrier_frequency     required   frequency
    orbit_radius          required   length
    speed                 required   speed
    tx_position           required   [length, length, length]
    rx_position           required   [length, length, length]
    ris_length            optional   length (required unless length_sweep)
    ris_width             optional   length (default: ris_length / 20)
    element_length        optional   length (default: wavelength / 5)
    element_width         optional   length (default: wavelength / 5)
    tx_gain, rx_gain      optional   number (default 1.0)
    reference_element     optional   [p, q] 1-based (default: grid center)
    min_station_distance  optional   length (default "1 m")
    strategy              optional   "proposed" | "reversed" | "both"
    snapshot_time         optional   time (default "10 s")
    time_sweep            optional   {"start", "stop", "step"} times
                                     (default 0 s .. 60 s step 1 s)
    length_sweep          optional   non-empty list of lengths
    quantization_levels   optional   integer >= 2 (exhaustive search runs)
    output                optional   output path string

Unknown keys are rejected. Internally everything is converted to strict
SI units at parse time.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .geometry import SPEED_OF_LIGHT, Scenario

FREQUENCY_UNITS = {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9}
LENGTH_UNITS = {"m": 1.0, "km": 1e3, "cm": 1e-2, "mm": 1e-3}
SPEED_UNITS = {"m/s": 1.0, "km/s": 1e3, "km/h": 1e3 / 3600.0}
TIME_UNITS = {"s": 1.0, "ms": 1e-3, "us": 1e-6}

_KNOWN_KEYS = {
    "carrier_frequency", "orbit_radius", "speed", "tx_position",
    "rx_position", "ris_length", "ris_width", "element_length",
    "element_width", "tx_gain", "rx_gain", "reference_element",
    "min_station_distance", "strategy", "snapshot_time", "time_sweep",
    "length_sweep", "quantization_levels", "output",
}
_REQUIRED_KEYS = ("carrier_frequency", "orbit_radius", "speed",
                  "tx_position", "rx_position")
_STRATEGY_CHOICES = ("proposed", "reversed", "both")


def parse_quantity(value, units: dict[str, float], path: str) -> float:
    """Parse ``"<number> <unit>"`` into SI using the given unit table."""
    if isinstance(value, (int, float)):
        raise ConfigError(
            f"{path}: bare number {value!r}; a unit suffix is required "
            f"(one of {', '.join(sorted(units))})")
    if not isinstance(value, str):
        raise ConfigError(f"{path}: expected a quantity string, got "
                          f"{type(value).__name__}")
    parts = value.strip().rsplit(" ", 1)
    if len(parts) != 2:
        raise ConfigError(f"{path}: {value!r} is not of the form "
                          f"'<number> <unit>'")
    number, unit = parts
    if unit not in units:
        raise ConfigError(f"{path}: unknown unit {unit!r} "
                          f"(expected one of {', '.join(sorted(units))})")
    try:
        magnitude = float(number)
    except ValueError:
        raise ConfigError(f"{path}: {number!r} is not a number") from None
    return magnitude * units[unit]


def _parse_position(value, path: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != 3:
        raise ConfigError(f"{path}: expected a 3-element list of lengths")
    return np.array([parse_quantity(v, LENGTH_UNITS, f"{path}[{i}]")
                     for i, v in enumerate(value)])


def _parse_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a plain number")
    return float(value)


@dataclass
class RunConfig:
    """A parsed configuration plus the source file's content hash."""

    carrier_frequency: float
    orbit_radius: float
    speed: float
    tx_position: np.ndarray
    rx_position: np.ndarray
    ris_length: float | None
    ris_width: float | None
    element_length: float | None
    element_width: float | None
    tx_gain: float
    rx_gain: float
    reference_element: tuple[int, int] | None
    min_station_distance: float
    strategy: str
    snapshot_time: float
    time_start: float
    time_stop: float
    time_step: float
    length_sweep: list[float] | None
    quantization_levels: int | None
    output: str | None
    config_sha256: str

    def strategies(self) -> tuple[str, ...]:
        if self.strategy == "both":
            return ("proposed", "reversed")
        return (self.strategy,)

    def scenario(self, ris_length: float | None = None) -> Scenario:
        """Build a validated scenario, optionally overriding the length.

        The panel width defaults to a twentieth of the length and the
        element pitch to a fifth of the carrier wavelength.
        """
        length = ris_length if ris_length is not None else self.ris_length
        if length is None:
            raise ConfigError("ris_length is required (or supply a "
                              "length_sweep entry)")
        width = self.ris_width if self.ris_width is not None else length / 20.0
        pitch = SPEED_OF_LIGHT / self.carrier_frequency / 5.0
        d_x = self.element_length if self.element_length is not None else pitch
        d_y = self.element_width if self.element_width is not None else pitch
        try:
            return Scenario(
                carrier_frequency=self.carrier_frequency,
                orbit_radius=self.orbit_radius,
                speed=self.speed,
                ris_length=length,
                ris_width=width,
                element_length=d_x,
                element_width=d_y,
                tx_position=self.tx_position,
                rx_position=self.rx_position,
                reference_element=self.reference_element,
                tx_gain=self.tx_gain,
                rx_gain=self.rx_gain,
                min_station_distance=self.min_station_distance)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def time_grid(self) -> np.ndarray:
        n = int(math.floor((self.time_stop - self.time_start)
                           / self.time_step + 1e-9)) + 1
        return self.time_start + self.time_step * np.arange(n)


def load_config(path: str) -> RunConfig:
    """Load and validate a configuration file."""
    try:
        with open(path, "rb") as handle:
            raw = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")

    unknown = sorted(set(data) - _KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"{path}: unknown keys: {', '.join(unknown)}")
    missing = [k for k in _REQUIRED_KEYS if k not in data]
    if missing:
        raise ConfigError(f"{path}: missing required keys: "
                          f"{', '.join(missing)}")

    strategy = data.get("strategy", "both")
    if strategy not in _STRATEGY_CHOICES:
        raise ConfigError(f"strategy: {strategy!r} is not one of "
                          f"{', '.join(_STRATEGY_CHOICES)}")

    reference = None
    if "reference_element" in data:
        ref = data["reference_element"]
        if (not isinstance(ref, list) or len(ref) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool)
                           and v >= 1 for v in ref)):
            raise ConfigError("reference_element: expected [p, q] with "
                              "1-based integer indices")
        reference = (ref[0], ref[1])

    time_start, time_stop, time_step = 0.0, 60.0, 1.0
    if "time_sweep" in data:
        sweep = data["time_sweep"]
        if not isinstance(sweep, dict):
            raise ConfigError("time_sweep: expected an object")
        extra = sorted(set(sweep) - {"start", "stop", "step"})
        if extra:
            raise ConfigError(f"time_sweep: unknown keys: {', '.join(extra)}")
        for key in ("start", "stop", "step"):
            if key not in sweep:
                raise ConfigError(f"time_sweep.{key} is required")
        time_start = parse_quantity(sweep["start"], TIME_UNITS,
                                    "time_sweep.start")
        time_stop = parse_quantity(sweep["stop"], TIME_UNITS,
                                   "time_sweep.stop")
        time_step = parse_quantity(sweep["step"], TIME_UNITS,
                                   "time_sweep.step")
        if time_step <= 0.0:
            raise ConfigError("time_sweep.step must be positive")
        if time_stop < time_start:
            raise ConfigError("time_sweep.stop must not precede start")

    length_sweep = None
    if "length_sweep" in data:
        entries = data["length_sweep"]
        if not isinstance(entries, list) or not entries:
            raise ConfigError("length_sweep: expected a non-empty list "
                              "of lengths")
        length_sweep = [parse_quantity(v, LENGTH_UNITS, f"length_sweep[{i}]")
                        for i, v in enumerate(entries)]

    levels = None
    if "quantization_levels" in data:
        value = data["quantization_levels"]
        if isinstance(value, bool) or not isinstance(value, int) or value < 2:
            raise ConfigError("quantization_levels: expected an integer >= 2")
        levels = value

    output = data.get("output")
    if output is not None and not isinstance(output, str):
        raise ConfigError("output: expected a path string")

    return RunConfig(
        carrier_frequency=parse_quantity(data["carrier_frequency"],
                                         FREQUENCY_UNITS,
                                         "carrier_frequency"),
        orbit_radius=parse_quantity(data["orbit_radius"], LENGTH_UNITS,
                                    "orbit_radius"),
        speed=parse_quantity(data["speed"], SPEED_UNITS, "speed"),
        tx_position=_parse_position(data["tx_position"], "tx_position"),
        rx_position=_parse_position(data["rx_position"], "rx_position"),
        ris_length=(parse_quantity(data["ris_length"], LENGTH_UNITS,
                                   "ris_length")
                    if "ris_length" in data else None),
        ris_width=(parse_quantity(data["ris_width"], LENGTH_UNITS,
                                  "ris_width")
                   if "ris_width" in data else None),
        element_length=(parse_quantity(data["element_length"], LENGTH_UNITS,
                                       "element_length")
                        if "element_length" in data else None),
        element_width=(parse_quantity(data["element_width"], LENGTH_UNITS,
                                      "element_width")
                       if "element_width" in data else None),
        tx_gain=_parse_number(data.get("tx_gain", 1.0), "tx_gain"),
        rx_gain=_parse_number(data.get("rx_gain", 1.0), "rx_gain"),
        reference_element=reference,
        min_station_distance=(parse_quantity(data["min_station_distance"],
                                             LENGTH_UNITS,
                                             "min_station_distance")
                              if "min_station_distance" in data else 1.0),
        strategy=strategy,
        snapshot_time=(parse_quantity(data["snapshot_time"], TIME_UNITS,
                                      "snapshot_time")
                       if "snapshot_time" in data else 10.0),
        time_start=time_start,
        time_stop=time_stop,
        time_step=time_step,
        length_sweep=length_sweep,
        quantization_levels=levels,
        output=output,
        config_sha256=hashlib.sha256(raw).hexdigest())
