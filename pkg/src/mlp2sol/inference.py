"""Two inference engines and the dataset plumbing around them.

The float engine is the IEEE-754 double reference; the fixed engine replays
the generated contract's arithmetic step for step. Both accumulate each
neuron the same way — inputs in index order, bias last, then the
activation — so the only divergence between them is fixed-point truncation
itself, never evaluation order.
"""
from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from . import fixedpoint as fp
from .model import ModelSpec, QuantizedModel, RELU, quantize


@dataclass(frozen=True)
class Dataset:
    feature_names: tuple[str, ...]
    features: tuple[tuple[float, ...], ...]
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.features) != len(self.labels):
            raise ValueError(f"{len(self.features)} feature rows vs {len(self.labels)} labels")
        width = len(self.feature_names)
        for r, row in enumerate(self.features):
            if len(row) != width:
                raise ValueError(f"row {r} has {len(row)} values, header has {width}")
        for r, label in enumerate(self.labels):
            if label not in (0, 1):
                raise ValueError(f"row {r}: label must be 0 or 1, got {label!r}")

    @property
    def rows(self) -> int:
        return len(self.features)

    @property
    def width(self) -> int:
        return len(self.feature_names)


@dataclass(frozen=True)
class EvaluationReport:
    float_predictions: tuple[int, ...]
    fixed_predictions: tuple[int, ...]
    float_accuracy: float
    fixed_accuracy: float
    agreement_count: int
    min_margin: float

    @property
    def rows(self) -> int:
        return len(self.float_predictions)

    @property
    def parity(self) -> bool:
        """True when both engines produced identical results end to end."""
        return (self.agreement_count == self.rows
                and self.float_accuracy == self.fixed_accuracy)


def load_dataset(path: Union[str, Path]) -> Dataset:
    """Read a CSV with a header row, feature columns, then a `label` column."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        if len(header) < 2 or header[-1] != "label":
            raise ValueError(f"{path}: last column must be named 'label'")
        features, labels = [], []
        for line, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ValueError(f"{path}:{line}: expected {len(header)} columns, got {len(row)}")
            try:
                features.append(tuple(float(v) for v in row[:-1]))
                labels.append(int(row[-1]))
            except ValueError as exc:
                raise ValueError(f"{path}:{line}: {exc}") from None
    return Dataset(tuple(header[:-1]), tuple(features), tuple(labels))


def write_dataset(dataset: Dataset, path: Union[str, Path]) -> None:
    """Inverse of load_dataset; floats use shortest round-trip form."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(list(dataset.feature_names) + ["label"])
        for row, label in zip(dataset.features, dataset.labels):
            writer.writerow([repr(v) for v in row] + [str(label)])


def _float_params(model: ModelSpec) -> list[tuple[list[list[float]], list[float], str]]:
    return [
        ([[float(w) for w in row] for row in layer.weights],
         [float(b) for b in layer.biases],
         layer.activation)
        for layer in model.layers
    ]


def _float_sigmoid(z: float) -> float:
    # Branch on sign so exp never overflows a double.
    if z >= 0.0:
        return 1.0 / (1.0 + math.exp(-z))
    grown = math.exp(z)
    return grown / (1.0 + grown)


def float_forward(model: ModelSpec, row: Sequence[float]) -> float:
    """Reference double-precision forward pass; returns the head probability."""
    if len(row) != model.input_dim:
        raise ValueError(f"row has {len(row)} features, model expects {model.input_dim}")
    values = list(row)
    for weights, biases, activation in _float_params(model):
        nxt = []
        for neuron_weights, bias in zip(weights, biases):
            acc = 0.0
            for w, x in zip(neuron_weights, values):
                acc += w * x
            acc += bias
            if activation == RELU:
                nxt.append(acc if acc > 0.0 else 0.0)
            else:
                nxt.append(_float_sigmoid(acc))
        values = nxt
    return values[0]


def fixed_forward(model: QuantizedModel, row: Sequence[fp.Fixed]) -> fp.Fixed:
    """Contract-exact forward pass over fixed-point values."""
    if len(row) != model.input_dim:
        raise ValueError(f"row has {len(row)} features, model expects {model.input_dim}")
    values = list(row)
    for layer in model.layers:
        nxt = []
        for neuron_weights, bias in zip(layer.weights, layer.biases):
            acc = fp.ZERO
            for w, x in zip(neuron_weights, values):
                acc = fp.add(acc, fp.mul(w, x))
            acc = fp.add(acc, bias)
            nxt.append(fp.relu(acc) if layer.activation == RELU else fp.sigmoid(acc))
        values = nxt
    return values[0]


def predict(probability: Union[float, fp.Fixed]) -> int:
    """Class label: 1 at or above one half, else 0."""
    if isinstance(probability, fp.Fixed):
        return 1 if probability.raw >= fp.HALF_UNIT else 0
    return 1 if probability >= 0.5 else 0


def normalize(dataset: Dataset) -> Dataset:
    """Min-max scale every feature column into [0, 1]; constant columns to 0."""
    if dataset.rows == 0:
        return dataset
    columns = list(zip(*dataset.features))
    scaled_columns = []
    for column in columns:
        lo, hi = min(column), max(column)
        if hi == lo:
            scaled_columns.append([0.0] * len(column))
        else:
            span = hi - lo
            scaled_columns.append([(v - lo) / span for v in column])
    rows = tuple(tuple(col[r] for col in scaled_columns) for r in range(dataset.rows))
    return Dataset(dataset.feature_names, rows, dataset.labels)


def split(dataset: Dataset, test_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Seeded shuffle, then carve off round(rows * fraction) test rows."""
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test fraction must be in (0, 1), got {test_fraction}")
    order = list(range(dataset.rows))
    random.Random(seed).shuffle(order)
    test_rows = int(dataset.rows * test_fraction + 0.5)  # half rounds up
    take = order[:test_rows]
    keep = order[test_rows:]

    def subset(indices: list[int]) -> Dataset:
        return Dataset(
            dataset.feature_names,
            tuple(dataset.features[i] for i in indices),
            tuple(dataset.labels[i] for i in indices),
        )

    return subset(keep), subset(take)


def evaluate(model: ModelSpec, test: Dataset) -> EvaluationReport:
    """Run both engines over every row and compare them against the labels."""
    if test.width != model.input_dim:
        raise ValueError(f"dataset has {test.width} features, model expects {model.input_dim}")
    if test.rows == 0:
        raise ValueError("cannot evaluate an empty dataset")
    quantized = quantize(model)

    float_preds, fixed_preds = [], []
    min_margin = math.inf
    for row in test.features:
        probability = float_forward(model, row)
        fixed_probability = fixed_forward(quantized, [fp.from_float(v) for v in row])
        float_preds.append(predict(probability))
        fixed_preds.append(predict(fixed_probability))
        min_margin = min(min_margin, abs(probability - 0.5))

    float_correct = sum(p == t for p, t in zip(float_preds, test.labels))
    fixed_correct = sum(p == t for p, t in zip(fixed_preds, test.labels))
    agreement = sum(a == b for a, b in zip(float_preds, fixed_preds))
    return EvaluationReport(
        float_predictions=tuple(float_preds),
        fixed_predictions=tuple(fixed_preds),
        float_accuracy=float_correct / test.rows,
        fixed_accuracy=fixed_correct / test.rows,
        agreement_count=agreement,
        min_margin=min_margin,
    )
