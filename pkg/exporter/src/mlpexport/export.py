"""Turn a trained torch MLP into the transpiler's interchange JSON + test CSV.

The output contract is mlp2sol's documented interchange format: decimal-text
weights (no exponent notation), relu hidden layers, a single sigmoid output
neuron. Weights are serialized in shortest round-trip form so re-reading the
text as a double gives back the exact trained value; quantization to fixed
point happens only inside the transpiler.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from decimal import Decimal
from pathlib import Path
from typing import Optional, Union

import torch
from torch import nn

from .data import Dataset, load_dataset, split, write_dataset
from .training import CHECKPOINT_FORMAT, build_mlp, train_reference

TRAIN_NOW = "train-now"
_TOOL = "mlpexport 0.1.0"


class ExportError(ValueError):
    """Model or job that cannot be exported."""


@dataclass(frozen=True)
class ExportJob:
    source: Union[str, Path]  # checkpoint path, or the TRAIN_NOW flag
    dataset: Union[str, Path]
    out_dir: Union[str, Path]
    test_fraction: float = 0.1
    seed: int = 0
    arch: str = "1L1N"  # consulted only when source == TRAIN_NOW
    name: Optional[str] = None

    def __post_init__(self) -> None:
        if not 0.0 < self.test_fraction < 1.0:
            raise ExportError(f"test fraction must be in (0, 1), got {self.test_fraction}")


@dataclass(frozen=True)
class ExportResult:
    model_file: Path
    test_file: Path
    name: str
    train_accuracy: float
    test_rows: int


def decimal_text(value: float) -> str:
    """Shortest positional numeral that reads back to exactly `value`."""
    value = float(value)
    if not math.isfinite(value):
        raise ExportError(f"non-finite parameter {value!r}")
    text = repr(value)
    if "e" in text or "E" in text:
        # exponent form is outside the interchange grammar; expand it exactly
        text = format(Decimal(text), "f")
    return text


@dataclass(frozen=True)
class LayerSnapshot:
    neurons: int
    activation: str
    weights: list[list[float]]
    biases: list[float]


def snapshot_module(module: nn.Module) -> list[LayerSnapshot]:
    """Flatten a Sequential of Linear + ReLU/Sigmoid pairs into layer records.

    Anything else — convolutions, pooling, normalization — is rejected: the
    interchange format only describes fully connected stacks.
    """
    if not isinstance(module, nn.Sequential):
        raise ExportError(f"expected an nn.Sequential model, got {type(module).__name__}")
    layers: list[LayerSnapshot] = []
    pending: Optional[nn.Linear] = None
    for child in module:
        if isinstance(child, nn.Linear):
            if pending is not None:
                raise ExportError("two Linear layers with no activation between them")
            pending = child
        elif isinstance(child, (nn.ReLU, nn.Sigmoid)):
            if pending is None:
                raise ExportError("activation with no preceding Linear layer")
            layers.append(LayerSnapshot(
                neurons=pending.out_features,
                activation="relu" if isinstance(child, nn.ReLU) else "sigmoid",
                weights=pending.weight.detach().tolist(),
                biases=pending.bias.detach().tolist(),
            ))
            pending = None
        else:
            raise ExportError(f"unsupported layer type: {type(child).__name__}")
    if pending is not None:
        raise ExportError("trailing Linear layer without an activation")
    if not layers:
        raise ExportError("model has no layers")
    head = layers[-1]
    if head.activation != "sigmoid" or head.neurons != 1:
        raise ExportError("final layer must be a single sigmoid neuron")
    for index, layer in enumerate(layers[:-1]):
        if layer.activation != "relu":
            raise ExportError(f"hidden layer {index + 1} must use relu, got {layer.activation}")
    return layers


def load_checkpoint(path: Union[str, Path]) -> tuple[nn.Sequential, dict]:
    payload = torch.load(path, weights_only=True)
    if not isinstance(payload, dict) or payload.get("format") != CHECKPOINT_FORMAT:
        raise ExportError(f"{path}: not an mlpexport checkpoint")
    module = build_mlp(payload["arch"], payload["input_dim"])
    try:
        module.load_state_dict(payload["state"])
    except RuntimeError as exc:
        raise ExportError(f"{path}: checkpoint state does not fit its declared arch: {exc}") from None
    return module, payload


def interchange_document(layers: list[LayerSnapshot], name: str, input_dim: int,
                         metadata: Optional[dict] = None) -> dict:
    document: dict = {
        "name": name,
        "input_dim": input_dim,
        "layers": [
            {
                "neurons": layer.neurons,
                "activation": layer.activation,
                "weights": [[decimal_text(w) for w in row] for row in layer.weights],
                "biases": [decimal_text(b) for b in layer.biases],
            }
            for layer in layers
        ],
    }
    if metadata is not None:
        document["metadata"] = metadata
    return document


def export_model(job: ExportJob) -> ExportResult:
    """Resolve the job's model, split its dataset, write model.json + test.csv."""
    data = load_dataset(job.dataset)
    out_dir = Path(job.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    if str(job.source) == TRAIN_NOW:
        trained = train_reference(job.dataset, job.arch, job.seed, out_dir / "model.pt")
        module, payload = load_checkpoint(trained.checkpoint)
    else:
        module, payload = load_checkpoint(job.source)

    if payload["input_dim"] != data.width:
        raise ExportError(
            f"model expects {payload['input_dim']} features, dataset has {data.width}")

    layers = snapshot_module(module)
    _, test = split(data, job.test_fraction, job.seed)
    name = job.name or f"{payload['arch']}-s{payload['seed']}"
    document = interchange_document(layers, name, data.width, metadata={
        "tool": _TOOL,
        "arch": payload["arch"],
        "seed": payload["seed"],
        "train_accuracy": payload["train_accuracy"],
        "hyperparameters": payload["hyperparameters"],
        "test_fraction": job.test_fraction,
    })

    model_file = out_dir / "model.json"
    model_file.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
    test_file = out_dir / "test.csv"
    write_dataset(test, test_file)
    return ExportResult(model_file, test_file, name, payload["train_accuracy"], test.rows)
