"""Dataset I/O in the CSV schema consumed by the mlp2sol transpiler.

The format is re-implemented here rather than imported: the exporter talks
to the transpiler only through its documented file formats, so this module
is the exporter's own copy of the contract — header row naming the feature
columns with a final ``label`` column, float features, 0/1 integer labels.
"""
from __future__ import annotations

import csv
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Union


class DataError(ValueError):
    """Malformed or inconsistent dataset file."""


@dataclass(frozen=True)
class Dataset:
    feature_names: tuple[str, ...]
    features: tuple[tuple[float, ...], ...]
    labels: tuple[int, ...]

    @property
    def rows(self) -> int:
        return len(self.features)

    @property
    def width(self) -> int:
        return len(self.feature_names)

    def base_rate(self) -> float:
        """Frequency of the majority class — the bar any trained model must beat."""
        if not self.labels:
            raise DataError("empty dataset has no base rate")
        ones = sum(self.labels)
        return max(ones, len(self.labels) - ones) / len(self.labels)


def load_dataset(path: Union[str, Path]) -> Dataset:
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file") from None
        if len(header) < 2 or header[-1] != "label":
            raise DataError(f"{path}: last column must be named 'label'")
        features: list[tuple[float, ...]] = []
        labels: list[int] = []
        for line, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise DataError(f"{path}:{line}: expected {len(header)} columns, got {len(row)}")
            try:
                values = tuple(float(v) for v in row[:-1])
                label = int(row[-1])
            except ValueError as exc:
                raise DataError(f"{path}:{line}: {exc}") from None
            if label not in (0, 1):
                raise DataError(f"{path}:{line}: label must be 0 or 1, got {label}")
            features.append(values)
            labels.append(label)
    if not features:
        raise DataError(f"{path}: no data rows")
    return Dataset(tuple(header[:-1]), tuple(features), tuple(labels))


def write_dataset(dataset: Dataset, path: Union[str, Path]) -> None:
    """Floats use shortest round-trip form, so written files re-read exactly."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(list(dataset.feature_names) + ["label"])
        for row, label in zip(dataset.features, dataset.labels):
            writer.writerow([repr(v) for v in row] + [str(label)])


def split(dataset: Dataset, test_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Seeded shuffle, then carve off round(rows * fraction) test rows.

    Same semantics as the transpiler's own `split`, so a fraction behaves
    identically whichever tool applies it. Returns (train, test).
    """
    if not 0.0 < test_fraction < 1.0:
        raise DataError(f"test fraction must be in (0, 1), got {test_fraction}")
    order = list(range(dataset.rows))
    random.Random(seed).shuffle(order)
    test_rows = int(dataset.rows * test_fraction + 0.5)

    def subset(indices: list[int]) -> Dataset:
        return Dataset(
            dataset.feature_names,
            tuple(dataset.features[i] for i in indices),
            tuple(dataset.labels[i] for i in indices),
        )

    return subset(order[test_rows:]), subset(order[:test_rows])
