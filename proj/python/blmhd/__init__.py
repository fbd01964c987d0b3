"""Boundary-layer MHD model: norms, inequality checks, solver runs and CLI verbs."""

import json

from ._core import (
    ConfigError,
    Grid,
    MonitorBreach,
    __version__,
    command_verbs,
    config_digest,
    hardy_check,
    heat_bound,
    initial_state,
    preset_names,
    sha256_hex,
    simulate,
    sobolev_check,
    weighted_l2,
)
from ._core import run_command as _run_command


def run_command(verb, config, out_dir, seed=None, strict=False):
    """Run a CLI verb on INI text; returns (exit_code, summary dict)."""
    code, summary = _run_command(verb, config, str(out_dir), seed, strict)
    return code, json.loads(summary)


__all__ = [
    "ConfigError",
    "Grid",
    "MonitorBreach",
    "__version__",
    "command_verbs",
    "config_digest",
    "hardy_check",
    "heat_bound",
    "initial_state",
    "preset_names",
    "run_command",
    "sha256_hex",
    "simulate",
    "sobolev_check",
    "weighted_l2",
]
