"""Seeded synthetic fixtures: a separable-with-noise dataset and random models.

Everything here is a pure function of its seed — same seed, same bytes on
disk — so fixtures can be regenerated at will and golden files stay honest.
"""
from __future__ import annotations

import random
import statistics

from .inference import Dataset, normalize
from .model import LayerSpec, ModelSpec

# Observed spread of trained parameters in the reference deployment; random
# fixture models draw from the same interval so they stress the arithmetic
# the way real checkpoints do.
WEIGHT_LOW = -2.73
WEIGHT_HIGH = 3.12


def make_dataset(seed: int, rows: int, features: int) -> Dataset:
    """Linearly-separable-with-noise binary dataset, min-max normalized.

    Labels come from a random hyperplane through the median score, with
    Gaussian score noise so the classes overlap slightly (realistically
    imperfect separability).
    """
    if rows < 1 or features < 1:
        raise ValueError("need at least one row and one feature")
    rng = random.Random(seed)
    direction = [rng.uniform(-1.0, 1.0) for _ in range(features)]
    grid = [tuple(rng.uniform(0.0, 1.0) for _ in range(features)) for _ in range(rows)]
    scores = [sum(d * v for d, v in zip(direction, row)) for row in grid]
    threshold = statistics.median(scores)
    spread = statistics.pstdev(scores) or 1.0
    labels = tuple(
        1 if score + rng.gauss(0.0, 0.1 * spread) > threshold else 0
        for score in scores
    )
    names = tuple(f"f{i}" for i in range(features))
    return normalize(Dataset(names, tuple(grid), labels))


def make_model(seed: int, layer_count: int, hidden_width: int, input_dim: int,
               name: str) -> ModelSpec:
    """Randomly initialized uniform architecture; parameters in the observed range."""
    if layer_count < 1 or hidden_width < 1 or input_dim < 1:
        raise ValueError("layer count, width, and input dim must all be >= 1")
    rng = random.Random(seed)

    def param() -> str:
        return f"{rng.uniform(WEIGHT_LOW, WEIGHT_HIGH):.6f}"

    widths = [hidden_width] * (layer_count - 1) + [1]
    layers = []
    fan_in = input_dim
    for position, width in enumerate(widths):
        last = position == len(widths) - 1
        layers.append(LayerSpec(
            neurons=width,
            activation="sigmoid" if last else "relu",
            weights=tuple(tuple(param() for _ in range(fan_in)) for _ in range(width)),
            biases=tuple(param() for _ in range(width)),
        ))
        fan_in = width
    return ModelSpec(name=name, input_dim=input_dim, layers=tuple(layers))
