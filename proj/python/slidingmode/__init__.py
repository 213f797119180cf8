"""Sliding mode control simulation: Python front end to the C++ core.

Configs are plain dicts in the same layout as the JSON files the ``smc``
command reads.
"""

import json

from ._core import (
    ConfigSyntaxError,
    ConfigValidationError,
    DataError,
    DimensionError,
    NotReachedError,
    NumericsError,
    ParameterError,
    SingularSurfaceGain,
    SmcError,
    closed_form_s,
    known_scenarios,
    known_suites,
    lyapunov_of,
    reaching_time_predicted,
    scenario_defaults,
    sgn,
)
from . import _core

__all__ = [
    "ConfigSyntaxError",
    "ConfigValidationError",
    "DataError",
    "DimensionError",
    "NotReachedError",
    "NumericsError",
    "ParameterError",
    "SingularSurfaceGain",
    "SmcError",
    "closed_form_s",
    "control",
    "known_scenarios",
    "known_suites",
    "lyapunov_of",
    "normalize_config",
    "reaching_law",
    "reaching_residual",
    "reaching_time_predicted",
    "run_suite",
    "scenario_defaults",
    "sgn",
    "simulate",
    "sweep",
]


def _dump(config):
    return config if isinstance(config, str) else json.dumps(config)


def normalize_config(config):
    """Validate a config and return it with every default filled in."""
    return json.loads(_core._normalize_config(_dump(config)))


def control(config, x, t=0.0):
    """Control decision (u, s, B, F, W) for the configured scenario at state x."""
    return _core._control(_dump(config), list(x), t)


def reaching_residual(config, x, t=0.0, d=0.0):
    """s*s' + n|s| at x with the matched disturbance set to d."""
    return _core._residual(_dump(config), list(x), t, d)


def simulate(config):
    """Run one configuration. Returns (report dict, trajectory dict)."""
    report, traj = _core._run(_dump(config))
    return json.loads(report), traj


def sweep(config, param, values):
    """Re-run config with the field at dotted path ``param`` set to each value."""
    return _core._sweep(_dump(config), param, [float(v) for v in values])


def reaching_law(n, s0, step=1e-4, t_end=3.0, method="rk4"):
    """Integrate s' = -n sgn(s) from s0."""
    return _core._reaching_law(n, s0, step, t_end, method)


def run_suite(name="all"):
    return _core._run_suite(name)
