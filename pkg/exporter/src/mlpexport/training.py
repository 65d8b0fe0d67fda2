"""Seeded reference training for wLxN feed-forward classifiers.

An architecture string ``wLxN`` names a stack of w layers: w-1 hidden layers
of x ReLU neurons, then a single sigmoid output neuron. ``1L1N`` is the bare
single-neuron case. Hyperparameters are fixed defaults — this is a
reproducibility tool, not a tuning harness — and every default is recorded
into the checkpoint so downstream files can carry it as metadata.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import torch
from torch import nn

from .data import load_dataset

_ARCH_RE = re.compile(r"^([0-9]+)L([0-9]+)N$")

OPTIMIZER = "adam"
LEARNING_RATE = 0.05
EPOCHS = 300

CHECKPOINT_FORMAT = "mlpexport-checkpoint-v1"


class ArchitectureError(ValueError):
    """Architecture text that does not name a trainable wLxN stack."""


def parse_arch(text: str) -> tuple[int, int]:
    """`"2L4N"` -> (2, 4). Counts must be >= 1; the format is case-sensitive."""
    match = _ARCH_RE.match(text)
    if not match:
        raise ArchitectureError(f"bad architecture {text!r}: expected wLxN, e.g. 2L4N")
    layers, width = int(match.group(1)), int(match.group(2))
    if layers < 1 or width < 1:
        raise ArchitectureError(f"bad architecture {text!r}: counts must be >= 1")
    return layers, width


def build_mlp(arch: str, input_dim: int) -> nn.Sequential:
    layers, width = parse_arch(arch)
    if input_dim < 1:
        raise ArchitectureError(f"input_dim must be >= 1, got {input_dim}")
    stack: list[nn.Module] = []
    fan_in = input_dim
    for _ in range(layers - 1):
        stack += [nn.Linear(fan_in, width), nn.ReLU()]
        fan_in = width
    stack += [nn.Linear(fan_in, 1), nn.Sigmoid()]
    return nn.Sequential(*stack)


@dataclass(frozen=True)
class TrainingResult:
    checkpoint: Path
    arch: str
    seed: int
    train_accuracy: float
    final_loss: float


def train_reference(dataset_path: Union[str, Path], arch: str, seed: int,
                    out: Union[str, Path]) -> TrainingResult:
    """Train `arch` on the full dataset with the fixed defaults, seeded.

    Two calls with the same inputs produce byte-identical checkpoints:
    weight init and the optimizer both run off `seed`, and training is pinned
    to one CPU thread so reductions are order-stable.
    """
    data = load_dataset(dataset_path)
    parse_arch(arch)  # fail before any tensor work
    torch.manual_seed(seed)
    torch.set_num_threads(1)

    x = torch.tensor(data.features, dtype=torch.float32)
    y = torch.tensor(data.labels, dtype=torch.float32).unsqueeze(1)
    model = build_mlp(arch, data.width)
    logits = model[:-1]  # train on logits; the sigmoid head stays for export
    loss_fn = nn.BCEWithLogitsLoss()
    optimizer = torch.optim.Adam(model.parameters(), lr=LEARNING_RATE)

    loss = torch.tensor(float("nan"))
    for _ in range(EPOCHS):
        optimizer.zero_grad()
        loss = loss_fn(logits(x), y)
        loss.backward()
        optimizer.step()

    with torch.no_grad():
        predicted = (logits(x) >= 0.0).to(torch.int64).squeeze(1)
        accuracy = (predicted == y.squeeze(1).to(torch.int64)).float().mean().item()

    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    torch.save(
        {
            "format": CHECKPOINT_FORMAT,
            "arch": arch,
            "input_dim": data.width,
            "seed": seed,
            "train_accuracy": accuracy,
            "final_loss": loss.item(),
            "hyperparameters": {
                "optimizer": OPTIMIZER,
                "learning_rate": LEARNING_RATE,
                "epochs": EPOCHS,
                "loss": "binary cross-entropy",
                "batch": "full",
            },
            "state": model.state_dict(),
        },
        out,
    )
    return TrainingResult(out, arch, seed, accuracy, loss.item())
