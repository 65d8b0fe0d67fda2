"""MLP interchange format: parsing, validation, quantization, size statistics.

A model travels as a UTF-8 JSON document::

    {"name": "...", "input_dim": 30,
     "layers": [{"neurons": 2, "activation": "relu",
                 "weights": [["0.5", ...], ...], "biases": ["0.25", ...]}, ...]}

Weights are row-major: ``layers[k].weights[j][i]`` is the edge from input (or
previous-layer neuron) ``i`` into neuron ``j``. Parameters are decimal text,
not binary floats, so quantization behaves identically on every platform and
emitted documents are byte-stable.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional, Union

from .fixedpoint import UNIT, Fixed, round_scaled, to_decimal

RELU = "relu"
SIGMOID = "sigmoid"

# Fraction length is unrestricted here; quantize() is the one lossy step and
# rounds to the 18-place grid. Exponent notation is deliberately rejected.
_PARAM_RE = re.compile(r"^-?[0-9]+(?:\.[0-9]+)?$")


class ModelFormatError(ValueError):
    """Interchange document violates the schema or an architecture rule."""


@dataclass(frozen=True)
class LayerSpec:
    neurons: int
    activation: str
    weights: tuple[tuple[str, ...], ...]
    biases: tuple[str, ...]


@dataclass(frozen=True)
class ModelSpec:
    name: str
    input_dim: int
    layers: tuple[LayerSpec, ...]

    def fan_in(self, index: int) -> int:
        """Input width of layer ``index`` (0-based)."""
        return self.input_dim if index == 0 else self.layers[index - 1].neurons


@dataclass(frozen=True)
class QuantizedLayer:
    neurons: int
    activation: str
    weights: tuple[tuple[Fixed, ...], ...]
    biases: tuple[Fixed, ...]


@dataclass(frozen=True)
class QuantizedModel:
    name: str
    input_dim: int
    layers: tuple[QuantizedLayer, ...]


@dataclass(frozen=True)
class ArchitectureStats:
    """Size bookkeeping consumed by the gas estimators.

    ``layer_count`` includes the output layer. ``uniform_hidden_width`` is
    populated only when every hidden layer shares one width (and is 1 for a
    single-layer model, which has no hidden layers at all); the deployment
    estimator is undefined otherwise. ``total_edges`` counts input-layer
    edges too, and ``input_edges`` counts just those.
    """

    layer_count: int
    uniform_hidden_width: Optional[int]
    total_edges: int
    total_neurons: int
    input_edges: int
    input_dim: int

    def __post_init__(self) -> None:
        if min(self.layer_count, self.total_edges, self.total_neurons,
               self.input_edges, self.input_dim) < 1:
            raise ValueError("all architecture counts must be >= 1")
        if self.input_edges > self.total_edges:
            raise ValueError("input edges cannot exceed total edges")

    @classmethod
    def for_uniform(cls, layer_count: int, hidden_width: int, input_dim: int) -> "ArchitectureStats":
        """Stats of a uniform architecture without materializing a model.

        ``layer_count - 1`` hidden layers of ``hidden_width`` neurons feed a
        single output neuron; a 1-layer network is the bare output neuron.
        """
        if layer_count < 1 or hidden_width < 1 or input_dim < 1:
            raise ValueError("layer count, width, and input dim must all be >= 1")
        widths = [hidden_width] * (layer_count - 1) + [1]
        edges = 0
        fan_in = input_dim
        for width in widths:
            edges += fan_in * width
            fan_in = width
        return cls(
            layer_count=layer_count,
            uniform_hidden_width=hidden_width if layer_count > 1 else 1,
            total_edges=edges,
            total_neurons=sum(widths),
            input_edges=input_dim * widths[0],
            input_dim=input_dim,
        )


def _fail(path: str, problem: str) -> ModelFormatError:
    return ModelFormatError(f"{path}: {problem}")


def _check_param(text: object, path: str) -> str:
    if not isinstance(text, str) or not _PARAM_RE.match(text):
        raise _fail(path, f"expected a decimal numeral string, got {text!r}")
    return text


def _parse_layer(raw: object, index: int, fan_in: int, last: bool) -> LayerSpec:
    path = f"layers[{index}]"
    if not isinstance(raw, dict):
        raise _fail(path, "expected an object")
    for key in ("neurons", "activation", "weights", "biases"):
        if key not in raw:
            raise _fail(f"{path}.{key}", "missing")
    neurons = raw["neurons"]
    if not isinstance(neurons, int) or isinstance(neurons, bool) or neurons < 1:
        raise _fail(f"{path}.neurons", f"expected a positive integer, got {neurons!r}")
    activation = raw["activation"]
    if activation not in (RELU, SIGMOID):
        raise _fail(f"{path}.activation", f"unknown activation {activation!r}")
    expected = SIGMOID if last else RELU
    if activation != expected:
        role = "final" if last else "hidden"
        raise _fail(f"{path}.activation", f"{role} layer must use {expected!r}")
    if last and neurons != 1:
        raise _fail(f"{path}.neurons", "final layer must have exactly 1 neuron")

    weights = raw["weights"]
    if not isinstance(weights, list) or len(weights) != neurons:
        raise _fail(f"{path}.weights", f"expected {neurons} rows")
    rows = []
    for j, row in enumerate(weights):
        if not isinstance(row, list) or len(row) != fan_in:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise _fail(f"{path}.weights[{j}]", f"expected {fan_in} entries, got {got}")
        rows.append(tuple(_check_param(v, f"{path}.weights[{j}][{i}]") for i, v in enumerate(row)))

    biases = raw["biases"]
    if not isinstance(biases, list) or len(biases) != neurons:
        raise _fail(f"{path}.biases", f"expected {neurons} entries")
    bias_row = tuple(_check_param(v, f"{path}.biases[{j}]") for j, v in enumerate(biases))
    return LayerSpec(neurons=neurons, activation=activation, weights=tuple(rows), biases=bias_row)


def parse_model(document: Union[bytes, str]) -> ModelSpec:
    """Parse and fully validate an interchange document.

    Raises ModelFormatError on malformed JSON, schema violations, shape
    mismatches, or an illegal layer stack. Unknown top-level keys (such as
    exporter metadata) are tolerated and dropped.
    """
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"document is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise _fail("document", "expected a top-level object")
    for key in ("name", "input_dim", "layers"):
        if key not in data:
            raise _fail(key, "missing")
    name = data["name"]
    if not isinstance(name, str):
        raise _fail("name", f"expected text, got {name!r}")
    input_dim = data["input_dim"]
    if not isinstance(input_dim, int) or isinstance(input_dim, bool) or input_dim < 1:
        raise _fail("input_dim", f"expected a positive integer, got {input_dim!r}")
    raw_layers = data["layers"]
    if not isinstance(raw_layers, list) or not raw_layers:
        raise _fail("layers", "expected a non-empty list")

    layers = []
    fan_in = input_dim
    for index, raw in enumerate(raw_layers):
        layer = _parse_layer(raw, index, fan_in, last=index == len(raw_layers) - 1)
        layers.append(layer)
        fan_in = layer.neurons
    return ModelSpec(name=name, input_dim=input_dim, layers=tuple(layers))


def emit_model(model: ModelSpec) -> bytes:
    """Serialize to the canonical interchange bytes; inverse of parse_model."""
    data = {
        "name": model.name,
        "input_dim": model.input_dim,
        "layers": [
            {
                "neurons": layer.neurons,
                "activation": layer.activation,
                "weights": [list(row) for row in layer.weights],
                "biases": list(layer.biases),
            }
            for layer in model.layers
        ],
    }
    return (json.dumps(data, indent=2) + "\n").encode("utf-8")


def quantize_text(text: str) -> Fixed:
    """Decimal text -> nearest Fixed, ties away from zero."""
    if not _PARAM_RE.match(text):
        raise ModelFormatError(f"not a decimal numeral: {text!r}")
    if "." in text:
        whole, frac = text.split(".")
    else:
        whole, frac = text, ""
    negative = whole.startswith("-")
    magnitude = int(whole.lstrip("-") + frac) * UNIT
    raw = round_scaled(-magnitude if negative else magnitude, 10 ** len(frac))
    return Fixed(raw)


def quantize(model: ModelSpec) -> QuantizedModel:
    """Round every parameter to the fixed-point grid; shape is preserved."""
    layers = tuple(
        QuantizedLayer(
            neurons=layer.neurons,
            activation=layer.activation,
            weights=tuple(tuple(quantize_text(v) for v in row) for row in layer.weights),
            biases=tuple(quantize_text(v) for v in layer.biases),
        )
        for layer in model.layers
    )
    return QuantizedModel(name=model.name, input_dim=model.input_dim, layers=layers)


def dequantize(model: QuantizedModel) -> ModelSpec:
    """Back to decimal text, canonical 18-digit form; quantize-exact inverse."""
    layers = tuple(
        LayerSpec(
            neurons=layer.neurons,
            activation=layer.activation,
            weights=tuple(tuple(to_decimal(v) for v in row) for row in layer.weights),
            biases=tuple(to_decimal(v) for v in layer.biases),
        )
        for layer in model.layers
    )
    return ModelSpec(name=model.name, input_dim=model.input_dim, layers=layers)


def arch_stats(model: ModelSpec) -> ArchitectureStats:
    """Derive the size statistics the gas estimators consume."""
    widths = [layer.neurons for layer in model.layers]
    edges = 0
    fan_in = model.input_dim
    for width in widths:
        edges += fan_in * width
        fan_in = width
    hidden = widths[:-1]
    if not hidden:
        uniform: Optional[int] = 1
    elif len(set(hidden)) == 1:
        uniform = hidden[0]
    else:
        uniform = None
    return ArchitectureStats(
        layer_count=len(widths),
        uniform_hidden_width=uniform,
        total_edges=edges,
        total_neurons=sum(widths),
        input_edges=model.input_dim * widths[0],
        input_dim=model.input_dim,
    )
