"""Regenerate the checked-in test fixtures and golden files.

Everything is seeded, so rerunning this script reproduces the exact bytes
under tests/fixtures/. The 1L1N model is actually trained (plain full-batch
logistic-regression gradient descent in pure Python — deterministic across
platforms); the deeper models are seeded random initializations whose seeds
were screened for full float/fixed prediction agreement with comfortable
decision margins on the 50-row test split.
"""
from __future__ import annotations

import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from mlp2sol import synth
from mlp2sol.codegen import CodegenOptions, emit_calldata, emit_contract
from mlp2sol.inference import Dataset, evaluate, split, write_dataset
from mlp2sol.model import LayerSpec, ModelSpec, emit_model, quantize

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"

DATA_SEED = 7
ROWS = 500
FEATURES = 30


def train_logistic(train: Dataset, epochs: int = 400, lr: float = 2.0) -> ModelSpec:
    """Full-batch GD on logistic loss; deterministic, zero-initialized."""
    d = train.width
    weights = [0.0] * d
    bias = 0.0
    n = train.rows
    for _ in range(epochs):
        grad_w = [0.0] * d
        grad_b = 0.0
        for row, label in zip(train.features, train.labels):
            z = sum(w * x for w, x in zip(weights, row)) + bias
            p = 1.0 / (1.0 + math.exp(-z)) if z >= 0 else math.exp(z) / (1.0 + math.exp(z))
            err = p - label
            for i, x in enumerate(row):
                grad_w[i] += err * x
            grad_b += err
        weights = [w - lr * g / n for w, g in zip(weights, grad_w)]
        bias -= lr * grad_b / n
    layer = LayerSpec(
        neurons=1,
        activation="sigmoid",
        weights=(tuple(f"{w:.12f}" for w in weights),),
        biases=(f"{bias:.12f}",),
    )
    return ModelSpec(name="fixture-1L1N-trained", input_dim=d, layers=(layer,))


def screen_seed(layer_count: int, width: int, test: Dataset, start: int) -> tuple[int, ModelSpec]:
    """First seed whose random model has full parity and safe margins on test."""
    for seed in range(start, start + 200):
        model = synth.make_model(seed, layer_count, width, FEATURES,
                                 name=f"fixture-{layer_count}L{width}N-s{seed}")
        report = evaluate(model, test)
        if report.parity and report.min_margin > 1e-4:
            return seed, model
    raise SystemExit(f"no workable seed found for {layer_count}L{width}N")


def main() -> None:
    (FIXTURES / "data").mkdir(parents=True, exist_ok=True)
    (FIXTURES / "models").mkdir(parents=True, exist_ok=True)
    (FIXTURES / "golden").mkdir(parents=True, exist_ok=True)

    dataset = synth.make_dataset(DATA_SEED, ROWS, FEATURES)
    train, test = split(dataset, 0.1, seed=DATA_SEED)
    write_dataset(dataset, FIXTURES / "data" / "dataset.csv")
    write_dataset(test, FIXTURES / "data" / "test50.csv")
    print(f"dataset: {ROWS} rows, test split {test.rows} rows, "
          f"base rate {sum(test.labels) / test.rows:.2f}")

    trained = train_logistic(train)
    report = evaluate(trained, test)
    print(f"1L1N trained: acc float {report.float_accuracy:.3f} fixed {report.fixed_accuracy:.3f} "
          f"agreement {report.agreement_count}/{report.rows} min margin {report.min_margin:.2e}")
    if not report.parity or report.min_margin <= 1e-4:
        raise SystemExit("trained 1L1N fixture lost parity; adjust training")

    seed2, model2 = screen_seed(2, 2, test, start=11)
    seed3, model3 = screen_seed(3, 4, test, start=13)
    print(f"screened seeds: 2L2N -> {seed2}, 3L4N -> {seed3}")

    jobs = [
        ("model_1l1n", trained, "Model1L1N"),
        ("model_2l2n", model2, "Model2L2N"),
        ("model_3l4n", model3, "Model3L4N"),
    ]
    for stem, model, contract in jobs:
        (FIXTURES / "models" / f"{stem}.json").write_bytes(emit_model(model))
        source = emit_contract(model, CodegenOptions(contract_name=contract))
        (FIXTURES / "golden" / f"{stem}.sol").write_text(source, encoding="utf-8", newline="\n")
        manifest = emit_calldata(quantize(model), test)
        (FIXTURES / "golden" / f"{stem}.calldata.json").write_text(
            manifest, encoding="utf-8", newline="\n")
        rep = evaluate(model, test)
        print(f"{stem}: parity={rep.parity} acc={rep.fixed_accuracy:.3f} "
              f"margin={rep.min_margin:.2e}")


if __name__ == "__main__":
    main()
