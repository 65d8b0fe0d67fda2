"""mlp2sol: translate small MLP classifiers into fixed-point Solidity
contracts, simulate the generated arithmetic exactly off-chain, and estimate
deployment/upload/inference gas from calibrated closed-form models."""

__version__ = "0.1.0"

from .codegen import CodegenOptions, emit_calldata, emit_contract
from .fixedpoint import Fixed
from .gasmodel import (GasCoefficients, GasEstimate, default_coefficients, deployment_gas,
                       estimate, inference_gas, load_coefficients, upload_gas)
from .inference import (Dataset, EvaluationReport, evaluate, fixed_forward, float_forward,
                        load_dataset, normalize, predict, split, write_dataset)
from .model import (ArchitectureStats, LayerSpec, ModelSpec, QuantizedModel, arch_stats,
                    dequantize, emit_model, parse_model, quantize)

__all__ = [
    "ArchitectureStats", "CodegenOptions", "Dataset", "EvaluationReport", "Fixed",
    "GasCoefficients", "GasEstimate", "LayerSpec", "ModelSpec", "QuantizedModel",
    "arch_stats", "default_coefficients", "dequantize", "deployment_gas", "emit_calldata",
    "emit_contract", "emit_model", "estimate", "evaluate", "fixed_forward", "float_forward",
    "inference_gas", "load_coefficients", "load_dataset", "normalize", "parse_model",
    "predict", "quantize", "split", "upload_gas", "write_dataset",
]
