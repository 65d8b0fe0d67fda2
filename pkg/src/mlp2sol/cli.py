"""Command-line front end tying the pipeline together.

Subcommands: transpile (model -> contract [+ calldata manifest]), gas
(estimates from a model file or explicit architecture flags), infer (run one
or both engines), compare (parity check between engines), fixture (seeded
synthetic dataset + model).

Exit codes: 0 success, 1 validation or parity failure, 2 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import synth
from .codegen import CodegenError, CodegenOptions, contract_name_for, emit_calldata, emit_contract
from .fixedpoint import FixedPointError, from_float
from .gasmodel import CoefficientError, GasEstimate, estimate, load_coefficients
from .inference import (Dataset, EvaluationReport, evaluate, fixed_forward, float_forward,
                        load_dataset, predict, write_dataset)
from .model import ArchitectureStats, ModelFormatError, arch_stats, emit_model, parse_model, quantize

_NOT_ESTIMABLE = "not estimable (non-uniform hidden widths)"


def _read_model(path: str):
    return parse_model(Path(path).read_bytes())


def cmd_transpile(args: argparse.Namespace) -> int:
    model = _read_model(args.model)
    name = args.contract_name or contract_name_for(model.name)
    source = emit_contract(model, CodegenOptions(contract_name=name))
    out = Path(args.out) if args.out else Path(args.model).with_suffix(".sol")
    out.write_text(source, encoding="utf-8", newline="\n")
    print(out)
    if args.data:
        dataset = load_dataset(args.data)
        manifest = emit_calldata(quantize(model), dataset)
        manifest_path = Path(args.manifest) if args.manifest else out.with_suffix(".calldata.json")
        manifest_path.write_text(manifest, encoding="utf-8", newline="\n")
        print(manifest_path)
    return 0


def _gas_report(est: GasEstimate, structured: bool) -> None:
    if structured:
        print(json.dumps({
            "deployment": est.deployment,
            "upload": est.upload,
            "inference_per_call": est.inference_per_call,
            "total_setup": est.total_setup,
        }, indent=2))
        return
    deployment = _NOT_ESTIMABLE if est.deployment is None else f"{est.deployment}"
    total = "not estimable" if est.total_setup is None else f"{est.total_setup}"
    print(f"deployment:         {deployment}")
    print(f"upload:             {est.upload}")
    print(f"inference per call: {est.inference_per_call}")
    print(f"total setup:        {total}")


def cmd_gas(args: argparse.Namespace) -> int:
    flags = (args.layers, args.width, args.input_dim)
    given = [v for v in flags if v is not None]
    if args.model is None and len(given) < 3:
        print("gas: provide a model file, or all of --layers/--width/--input-dim", file=sys.stderr)
        return 1
    if args.model is not None and given:
        print("gas: a model file and architecture flags are mutually exclusive", file=sys.stderr)
        return 1
    coeffs = load_coefficients(args.coeffs)
    if args.model is not None:
        stats = arch_stats(_read_model(args.model))
    else:
        stats = ArchitectureStats.for_uniform(args.layers, args.width, args.input_dim)
    est = estimate(stats, coeffs)
    _gas_report(est, args.report == "structured")
    return 1 if est.deployment is None else 0


def cmd_infer(args: argparse.Namespace) -> int:
    model = _read_model(args.model)
    dataset = load_dataset(args.data)
    if dataset.width != model.input_dim:
        print(f"infer: dataset has {dataset.width} features, model expects {model.input_dim}",
              file=sys.stderr)
        return 1
    result: dict = {"rows": dataset.rows}
    if args.engine in ("float", "both"):
        preds = [predict(float_forward(model, row)) for row in dataset.features]
        result["float_predictions"] = preds
        result["float_accuracy"] = sum(p == t for p, t in zip(preds, dataset.labels)) / dataset.rows
    if args.engine in ("fixed", "both"):
        quantized = quantize(model)
        preds = [predict(fixed_forward(quantized, [from_float(v) for v in row]))
                 for row in dataset.features]
        result["fixed_predictions"] = preds
        result["fixed_accuracy"] = sum(p == t for p, t in zip(preds, dataset.labels)) / dataset.rows
    if args.report == "structured":
        print(json.dumps(result, indent=2))
    else:
        print(f"rows:           {result['rows']}")
        for engine in ("float", "fixed"):
            if f"{engine}_accuracy" in result:
                print(f"{engine} accuracy: {result[f'{engine}_accuracy']:.6f}")
    return 0


def _compare_report(report: EvaluationReport, structured: bool) -> None:
    if structured:
        print(json.dumps({
            "rows": report.rows,
            "float_predictions": list(report.float_predictions),
            "fixed_predictions": list(report.fixed_predictions),
            "float_accuracy": report.float_accuracy,
            "fixed_accuracy": report.fixed_accuracy,
            "agreement_count": report.agreement_count,
            "min_margin": report.min_margin,
            "parity": report.parity,
        }, indent=2))
        return
    print(f"rows:           {report.rows}")
    print(f"float accuracy: {report.float_accuracy:.6f}")
    print(f"fixed accuracy: {report.fixed_accuracy:.6f}")
    print(f"agreement:      {report.agreement_count}/{report.rows}")
    print(f"min margin:     {report.min_margin:.9f}")
    print(f"parity:         {'yes' if report.parity else 'NO'}")


def cmd_compare(args: argparse.Namespace) -> int:
    model = _read_model(args.model)
    dataset = load_dataset(args.data)
    report = evaluate(model, dataset)
    _compare_report(report, args.report == "structured")
    return 0 if report.parity else 1


def cmd_fixture(args: argparse.Namespace) -> int:
    if args.rows < 10:
        print(f"fixture: need at least 10 rows, got {args.rows}", file=sys.stderr)
        return 1
    if args.features < 1:
        print(f"fixture: need at least 1 feature, got {args.features}", file=sys.stderr)
        return 1
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    dataset = synth.make_dataset(args.seed, args.rows, args.features)
    model = synth.make_model(
        args.seed, args.layers, args.width, args.features,
        name=f"fixture-{args.layers}L{args.width}N-s{args.seed}",
    )
    data_path = out_dir / "dataset.csv"
    model_path = out_dir / "model.json"
    write_dataset(dataset, data_path)
    model_path.write_bytes(emit_model(model))
    print(data_path)
    print(model_path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlp2sol",
        description="Translate MLP classifiers to fixed-point Solidity, simulate the "
                    "generated arithmetic exactly, and estimate gas costs.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("transpile", help="emit a Solidity contract for a model")
    p.add_argument("model", help="interchange JSON file")
    p.add_argument("-o", "--out", help="contract output path (default: model path with .sol)")
    p.add_argument("--contract-name", help="override the generated contract identifier")
    p.add_argument("--data", help="CSV test set; also writes a calldata manifest")
    p.add_argument("--manifest", help="manifest output path (with --data)")
    p.set_defaults(handler=cmd_transpile)

    p = sub.add_parser("gas", help="estimate deployment/upload/inference gas")
    p.add_argument("model", nargs="?", help="interchange JSON file")
    p.add_argument("--layers", type=int, help="layer count (with --width/--input-dim)")
    p.add_argument("--width", type=int, help="uniform hidden width")
    p.add_argument("--input-dim", type=int, help="input feature count")
    p.add_argument("--coeffs", help="coefficient override file (JSON)")
    p.add_argument("--report", choices=("text", "structured"), default="text")
    p.set_defaults(handler=cmd_gas)

    p = sub.add_parser("infer", help="run inference over a CSV dataset")
    p.add_argument("model", help="interchange JSON file")
    p.add_argument("data", help="CSV dataset")
    p.add_argument("--engine", choices=("float", "fixed", "both"), default="both")
    p.add_argument("--report", choices=("text", "structured"), default="text")
    p.set_defaults(handler=cmd_infer)

    p = sub.add_parser("compare", help="check float/fixed prediction parity")
    p.add_argument("model", help="interchange JSON file")
    p.add_argument("data", help="CSV dataset")
    p.add_argument("--report", choices=("text", "structured"), default="text")
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("fixture", help="generate a seeded synthetic dataset and model")
    p.add_argument("out_dir", help="output directory")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--rows", type=int, default=500)
    p.add_argument("--features", type=int, default=30)
    p.add_argument("--layers", type=int, default=1, help="model layer count")
    p.add_argument("--width", type=int, default=1, help="model hidden width")
    p.set_defaults(handler=cmd_fixture)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ModelFormatError, CoefficientError, CodegenError, FixedPointError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
