"""Closed-form gas estimates for contract deployment, parameter upload, and
classification calls.

All three estimators are exact integer formulas, linear in the architecture
counts. The coefficients were calibrated empirically against a deployed
contract family, so they ship in a data file rather than in code: a
recalibrated set (different chain, compiler, or library version) can be
swapped in through ``load_coefficients`` without touching the formulas.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from .model import ArchitectureStats

# Override-file key for each field. The short keys are the calibration
# table's own row labels and are the on-disk interface; code uses the
# descriptive names.
FILE_KEYS = {
    "O_D": "deploy_base",
    "N_D": "deploy_per_neuron",
    "W_D": "deploy_layer_weights",
    "C_D": "deploy_layer_code",
    "B_D": "deploy_layer_biases",
    "S_D": "deploy_layer_setters",
    "O_W": "upload_base",
    "L": "upload_per_layer",
    "W": "upload_per_edge",
    "B": "upload_per_neuron",
    "O_C": "classify_base",
    "R": "relu_per_edge",
    "S": "sigmoid_cost",
    "E": "classify_per_edge",
    "L_C": "classify_per_layer",
}


class CoefficientError(ValueError):
    """Coefficient set is incomplete, non-integer, or not strictly positive."""


@dataclass(frozen=True)
class GasCoefficients:
    """Calibrated per-unit gas costs; every value is strictly positive."""

    deploy_base: int
    deploy_per_neuron: int
    deploy_layer_weights: int
    deploy_layer_code: int
    deploy_layer_biases: int
    deploy_layer_setters: int
    upload_base: int
    upload_per_layer: int
    upload_per_edge: int
    upload_per_neuron: int
    classify_base: int
    relu_per_edge: int
    sigmoid_cost: int
    classify_per_edge: int
    classify_per_layer: int

    def __post_init__(self) -> None:
        for field in fields(self):
            value = getattr(self, field.name)
            if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
                raise CoefficientError(f"{field.name} must be a positive integer, got {value!r}")

    @property
    def deploy_per_layer(self) -> int:
        """Combined cost of one additional layer's arrays, code, and setters."""
        return (self.deploy_layer_weights + self.deploy_layer_code
                + self.deploy_layer_biases + self.deploy_layer_setters)


def _from_mapping(data: object, origin: str) -> GasCoefficients:
    if not isinstance(data, dict):
        raise CoefficientError(f"{origin}: expected a flat key/integer object")
    missing = sorted(set(FILE_KEYS) - set(data))
    extra = sorted(set(data) - set(FILE_KEYS))
    if missing or extra:
        parts = []
        if missing:
            parts.append(f"missing keys {missing}")
        if extra:
            parts.append(f"unknown keys {extra}")
        raise CoefficientError(f"{origin}: coefficient sets are all-or-nothing ({'; '.join(parts)})")
    return GasCoefficients(**{field: data[key] for key, field in FILE_KEYS.items()})


def default_coefficients() -> GasCoefficients:
    """The calibrated defaults shipped with the package."""
    text = resources.files("mlp2sol").joinpath("data/gas_coefficients.json").read_text("utf-8")
    return _from_mapping(json.loads(text), "packaged defaults")


def load_coefficients(path: Union[str, Path, None]) -> GasCoefficients:
    """Read a coefficient override file, or the defaults when path is None."""
    if path is None:
        return default_coefficients()
    text = Path(path).read_text("utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CoefficientError(f"{path}: not valid JSON: {exc}") from exc
    return _from_mapping(data, str(path))


@dataclass(frozen=True)
class GasEstimate:
    """Estimates for one architecture; deployment is None when the model has
    non-uniform hidden widths (that estimator needs a single hidden width)."""

    deployment: Optional[int]
    upload: int
    inference_per_call: int

    @property
    def total_setup(self) -> Optional[int]:
        if self.deployment is None:
            return None
        return self.deployment + self.upload


def deployment_gas(layer_count: int, hidden_width: int, coeffs: GasCoefficients) -> int:
    """Gas to deploy a uniform network: base + per-extra-layer + per-extra-neuron."""
    if layer_count < 1 or hidden_width < 1:
        raise ValueError("layer count and hidden width must be >= 1")
    return (coeffs.deploy_base
            + (layer_count - 1) * coeffs.deploy_per_layer
            + (hidden_width - 1) * coeffs.deploy_per_neuron)


def upload_gas(stats: ArchitectureStats, coeffs: GasCoefficients) -> int:
    """Gas to push all weights and biases into contract storage."""
    return (coeffs.upload_base
            + coeffs.upload_per_layer * stats.layer_count
            + coeffs.upload_per_edge * stats.total_edges
            + coeffs.upload_per_neuron * stats.total_neurons)


def inference_gas(stats: ArchitectureStats, coeffs: GasCoefficients) -> int:
    """Gas for one classification call over the uploaded parameters.

    The relu term scales with non-input edges — the calibration's observed
    fit — rather than with hidden neuron count; kept exactly as calibrated.
    """
    non_input_edges = stats.total_edges - stats.input_edges
    return (coeffs.classify_base
            + coeffs.relu_per_edge * non_input_edges
            + coeffs.classify_per_edge * stats.total_edges
            + coeffs.classify_per_layer * (stats.layer_count - 1)
            + coeffs.sigmoid_cost)


def estimate(stats: ArchitectureStats, coeffs: GasCoefficients) -> GasEstimate:
    """All three estimates; deployment only when the hidden width is uniform."""
    if stats.uniform_hidden_width is None:
        deployment = None
    else:
        deployment = deployment_gas(stats.layer_count, stats.uniform_hidden_width, coeffs)
    return GasEstimate(
        deployment=deployment,
        upload=upload_gas(stats, coeffs),
        inference_per_call=inference_gas(stats, coeffs),
    )
