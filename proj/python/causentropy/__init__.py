"""Causal-order entropy transfer toolkit.

Scenario configs and reports are plain dicts matching the shipped JSON
schema. Matrices are complex numpy arrays; sampled fields are real arrays
with one origin and one spacing per axis.
"""

from __future__ import annotations

import json
from typing import Any, Sequence

import numpy as np

from . import _core

__all__ = [
    "Error",
    "__version__",
    "apply_transfer",
    "area_from_entropy",
    "boost_integral",
    "certify_partitions",
    "emit_report",
    "entropy_from_area",
    "negativity",
    "ppt_gap",
    "reduced_state",
    "run_scenario",
    "run_sweep",
    "scenario_schema",
    "ssa_gap",
    "trapezoid",
    "unit_trace_constant",
    "validate_config",
    "von_neumann_entropy",
]

__version__ = _core.version()

Error = _core.Error
Error.code = property(lambda self: self.args[0], doc="Stable error code, e.g. 'InvalidLedger'.")
Error.detail = property(lambda self: self.args[1])
Error.__str__ = lambda self: f"{self.args[0]}: {self.args[1]}"


def _dumps(obj: Any) -> str:
    return json.dumps(obj, allow_nan=False)


def scenario_schema() -> dict:
    return json.loads(_core.scenario_schema())


def validate_config(config: dict) -> list[str]:
    """Schema diagnostics as 'path: message' strings; empty when valid."""
    return list(_core.config_diagnostics(_dumps(config)))


def run_scenario(config: dict) -> dict:
    return json.loads(_core.run_scenario(_dumps(config)))


def run_sweep(config: dict, threads: int = 0) -> list[dict]:
    """One {'assignment', 'report'} record per grid point, in grid order."""
    return json.loads(_core.run_sweep(_dumps(config), threads))


def emit_report(report: dict, format: str = "json") -> str:
    return _core.emit_report(_dumps(report), format)


def apply_transfer(s_g: float, s_e: float, s_b: float, s_e_star: float, s_b_star: float, s_0: float,
                   strict_monotonicity: bool = False) -> dict:
    return json.loads(_core.apply_transfer(s_g, s_e, s_b, s_e_star, s_b_star, s_0, strict_monotonicity))


def _matrix(rho) -> np.ndarray:
    return np.asarray(rho, dtype=np.complex128)


def von_neumann_entropy(rho, dims: Sequence[int]) -> float:
    """Entropy in bits."""
    return _core.von_neumann_entropy(_matrix(rho), list(dims))


def reduced_state(rho, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    return _core.reduced_state(_matrix(rho), list(dims), list(keep))


def negativity(rho, dims: Sequence[int], cut: int) -> float:
    return _core.negativity(_matrix(rho), list(dims), cut)


def ppt_gap(rho, dims: Sequence[int], cut: int) -> float:
    return _core.ppt_gap(_matrix(rho), list(dims), cut)


def ssa_gap(rho, dims: Sequence[int], region1: Sequence[int], region2: Sequence[int]) -> float:
    return _core.ssa_gap(_matrix(rho), list(dims), list(region1), list(region2))


def certify_partitions(rho, dims: Sequence[int], seed: int | None = None) -> dict:
    """Certificate for a (G, E, B) state."""
    if seed is None:
        return json.loads(_core.certify_partitions(_matrix(rho), list(dims)))
    return json.loads(_core.certify_partitions(_matrix(rho), list(dims), seed))


def area_from_entropy(s_bits: float, scheme: dict | None = None, regime: str = "regulated") -> float:
    return _core.area_from_entropy(s_bits, _dumps(scheme or {}), regime)


def entropy_from_area(area: float, scheme: dict | None = None, regime: str = "regulated") -> float:
    return _core.entropy_from_area(area, _dumps(scheme or {}), regime)


def trapezoid(values, origins: Sequence[float], spacings: Sequence[float]) -> float:
    return _core.trapezoid(np.asarray(values, dtype=np.float64), list(origins), list(spacings))


def boost_integral(values, origins: Sequence[float], spacings: Sequence[float]) -> float:
    return _core.boost_integral(np.asarray(values, dtype=np.float64), list(origins), list(spacings))


def unit_trace_constant(h) -> float:
    return _core.unit_trace_constant(_matrix(h))
