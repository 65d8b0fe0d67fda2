"""Command line front end: `mlpexport train` and `mlpexport export`.

Exit codes match the transpiler's convention: 0 success, 1 validation
failure, 2 I/O failure.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .data import DataError
from .export import TRAIN_NOW, ExportJob, export_model
from .training import ArchitectureError, train_reference


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlpexport",
        description="Train small MLP classifiers and export them for the mlp2sol transpiler.")
    commands = parser.add_subparsers(dest="command", required=True)

    train = commands.add_parser("train", help="train a wLxN model on a CSV dataset")
    train.add_argument("dataset", help="CSV file (feature columns + final 'label' column)")
    train.add_argument("--arch", default="1L1N", help="architecture, e.g. 2L4N (default 1L1N)")
    train.add_argument("--seed", type=int, default=0)
    train.add_argument("--out", default="model.pt", help="checkpoint output path")
    train.set_defaults(func=cmd_train)

    export = commands.add_parser(
        "export", help="write interchange model.json + test.csv from a checkpoint")
    export.add_argument("source", help=f"checkpoint path, or '{TRAIN_NOW}' to train first")
    export.add_argument("--data", required=True, help="CSV dataset to split")
    export.add_argument("--test-fraction", type=float, default=0.1)
    export.add_argument("--seed", type=int, default=0)
    export.add_argument("--arch", default="1L1N", help=f"architecture when source is '{TRAIN_NOW}'")
    export.add_argument("--name", help="model name recorded in the interchange file")
    export.add_argument("--out-dir", required=True)
    export.set_defaults(func=cmd_export)
    return parser


def cmd_train(args: argparse.Namespace) -> int:
    result = train_reference(args.dataset, args.arch, args.seed, args.out)
    print(f"arch:           {result.arch}")
    print(f"seed:           {result.seed}")
    print(f"train accuracy: {result.train_accuracy:.6f}")
    print(f"final loss:     {result.final_loss:.6f}")
    print(f"checkpoint:     {result.checkpoint}")
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    job = ExportJob(
        source=args.source if args.source == TRAIN_NOW else Path(args.source),
        dataset=Path(args.data),
        out_dir=Path(args.out_dir),
        test_fraction=args.test_fraction,
        seed=args.seed,
        arch=args.arch,
        name=args.name,
    )
    result = export_model(job)
    print(f"model:          {result.model_file}")
    print(f"test set:       {result.test_file} ({result.test_rows} rows)")
    print(f"train accuracy: {result.train_accuracy:.6f}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ArchitectureError, DataError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
