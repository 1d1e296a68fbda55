"""Sweep execution and deterministic result serialization.

Sweep points are independent jobs; a thread pool may evaluate them in any
order, but rows are buffered and written in input order, and every float
is formatted as scientific notation with 12 significant digits, so output
files are byte-identical across runs and worker counts.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
import time as _time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .channel import snapshot as build_snapshot
from .config import RunConfig
from .errors import ConfigError
from .geometry import build_grid
from .metrics import (MetricsReport, channel_gain, max_channel_gain,
                      reports_for_strategies)
from .oracle import brute_force_gain
from .phases import proposed_phases, reversed_phases

CSV_COLUMNS = ("sweep_var", "strategy", "P", "Q", "gain_db", "doppler_hz",
               "delay_spread_s", "delay_upper_s")
SCHEMA_VERSION = 1

# Finite stand-in for -inf dB in serialized outputs.
GAIN_DB_SENTINEL = -400.0


@dataclass(frozen=True)
class SweepRow:
    """One output record of a sweep: a (point, strategy) pair."""

    sweep_var: float
    strategy: str
    num_columns: int
    num_rows: int
    gain_db: float
    doppler_hz: float
    delay_spread_s: float
    delay_upper_s: float
    wall_time_s: float       # diagnostic only, never serialized
    flagged_elements: int    # drives the CLI's numerical-flag exit code


def format_float(value: float) -> str:
    """Scientific notation, 12 significant digits, sentinel for -inf dB."""
    if math.isinf(value):
        value = GAIN_DB_SENTINEL if value < 0 else -GAIN_DB_SENTINEL
    return f"{value:.11e}"


def _rows_for_point(config: RunConfig, scenario, t, sweep_var,
                    kinematics=None) -> list[SweepRow]:
    started = _time.perf_counter()
    snap = build_snapshot(scenario, t, kinematics)
    reports = reports_for_strategies(snap, config.strategies())
    elapsed = _time.perf_counter() - started
    return [SweepRow(sweep_var=float(sweep_var),
                     strategy=report.strategy,
                     num_columns=scenario.num_columns,
                     num_rows=scenario.num_rows,
                     gain_db=report.gain_db,
                     doppler_hz=report.doppler_spread_hz,
                     delay_spread_s=report.delay_spread_s,
                     delay_upper_s=report.delay_spread_upper_s,
                     wall_time_s=elapsed,
                     flagged_elements=report.flagged_elements)
            for report in reports]


def _run_jobs(jobs, threads: int) -> list[list[SweepRow]]:
    if threads <= 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda job: job(), jobs))


def dimension_sweep(config: RunConfig, threads: int = 1) -> list[SweepRow]:
    """Metrics versus panel length at the configured snapshot time."""
    if config.length_sweep is None:
        raise ConfigError("length_sweep is required for a dimension sweep")
    t = config.snapshot_time
    jobs = []
    for length in config.length_sweep:
        scenario = config.scenario(length)
        jobs.append(lambda s=scenario, a=length:
                    _rows_for_point(config, s, t, a))
    batches = _run_jobs(jobs, threads)
    return [row for batch in batches for row in batch]


def time_sweep(config: RunConfig, threads: int = 1) -> list[SweepRow]:
    """Metrics versus time for each configured panel length."""
    if config.length_sweep is None:
        raise ConfigError("length_sweep is required for a time sweep")
    grid = config.time_grid()
    jobs = []
    for length in config.length_sweep:
        scenario = config.scenario(length)
        kin = build_grid(scenario)  # shared read-only across time points
        for t in grid:
            jobs.append(lambda s=scenario, tt=float(t), k=kin:
                        _rows_for_point(config, s, tt, tt, k))
    batches = _run_jobs(jobs, threads)
    return [row for batch in batches for row in batch]


def snapshot_report(config: RunConfig, t: float | None = None,
                    dump_elements: bool = False) -> dict:
    """Full metrics report (per strategy) at one time instant."""
    if t is None:
        t = config.snapshot_time
    scenario = config.scenario()
    kin = build_grid(scenario)
    snap = build_snapshot(scenario, t, kin)
    reports = reports_for_strategies(snap, config.strategies())
    result = {
        "tool": "hapsris",
        "version": __version__,
        "schema": SCHEMA_VERSION,
        "config_sha256": config.config_sha256,
        "time_s": _num(t),
        "ris_length_m": _num(scenario.ris_length),
        "ris_width_m": _num(scenario.ris_width),
        "P": scenario.num_columns,
        "Q": scenario.num_rows,
        "reference_element": list(scenario.reference()),
        "reports": [_report_dict(r) for r in reports],
    }
    if dump_elements:
        phase_grids = {}
        for name in config.strategies():
            assignment = (proposed_phases(snap) if name == "proposed"
                          else reversed_phases(snap))
            phase_grids[name] = _num_list(assignment.phases.ravel())
        result["elements"] = {
            "p": [int(v) for v in np.asarray(kin.p).ravel()],
            "q": [int(v) for v in np.asarray(kin.q).ravel()],
            "amplitude": _num_list(snap.amplitude.ravel()),
            "delay_s": _num_list(snap.delay.ravel()),
            "delay_rate": _num_list(snap.delay_rate.ravel()),
            "phase_rad": phase_grids,
        }
    return result


def oracle_report(config: RunConfig) -> dict:
    """Exhaustive lattice search compared against the closed-form gain."""
    if config.quantization_levels is None:
        raise ConfigError("quantization_levels is required for an "
                          "exhaustive search run")
    scenario = config.scenario()
    t = config.snapshot_time
    snap = build_snapshot(scenario, t)
    result = brute_force_gain(snap, config.quantization_levels)
    closed_form = max_channel_gain(snap)
    achieved = channel_gain(snap, proposed_phases(snap))
    return {
        "tool": "hapsris",
        "version": __version__,
        "schema": SCHEMA_VERSION,
        "config_sha256": config.config_sha256,
        "time_s": _num(t),
        "elements": scenario.num_elements,
        "levels": result.levels,
        "states_searched": result.states_searched,
        "best_gain": _num(result.best_gain),
        "best_phases_rad": [_num_list(row) for row in result.best_phases],
        "closed_form_gain": _num(closed_form),
        "proposed_gain": _num(achieved),
        "gain_ratio": _num(result.best_gain / closed_form
                           if closed_form > 0 else 0.0),
        "quantization_bound": _num(math.cos(math.pi / result.levels) ** 2),
    }


def _report_dict(report: MetricsReport) -> dict:
    gain_db = report.gain_db
    if math.isinf(gain_db):
        gain_db = GAIN_DB_SENTINEL
    return {
        "strategy": report.strategy,
        "time_s": _num(report.time),
        "gain_linear": _num(report.gain_linear),
        "gain_db": _num(gain_db),
        "doppler_hz": _num(report.doppler_spread_hz),
        "delay_spread_s": _num(report.delay_spread_s),
        "delay_upper_s": _num(report.delay_spread_upper_s),
        "max_gain_linear": _num(report.max_gain_linear),
        "flagged_elements": report.flagged_elements,
    }


def _num(value: float) -> float:
    """Round-trip through the fixed 12-digit format for stable JSON."""
    return float(format_float(float(value)))


def _num_list(values) -> list[float]:
    return [_num(v) for v in np.asarray(values, dtype=float)]


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def render_sweep_csv(rows: list[SweepRow], config_sha256: str) -> str:
    """CSV text with a self-describing header comment line."""
    lines = [f"# hapsris {__version__} schema={SCHEMA_VERSION} "
             f"config_sha256={config_sha256[:12]}",
             ",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join((
            format_float(row.sweep_var),
            row.strategy,
            str(row.num_columns),
            str(row.num_rows),
            format_float(row.gain_db),
            format_float(row.doppler_hz),
            format_float(row.delay_spread_s),
            format_float(row.delay_upper_s))))
    return "\n".join(lines) + "\n"


def write_sweep_csv(rows: list[SweepRow], path: str, config_sha256: str):
    _atomic_write(path, render_sweep_csv(rows, config_sha256))


def render_json(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def write_json(obj: dict, path: str):
    _atomic_write(path, render_json(obj))
