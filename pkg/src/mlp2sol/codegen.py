"""Deterministic Solidity emission for a quantized feed-forward classifier.

The contract text is assembled from explicit string fragments — no template
engine — so identical inputs always produce byte-identical output. The
classify() body performs exactly the accumulation sequence documented in
`inference.fixed_forward` (inputs in index order, bias last, activation), so
the off-chain simulator and the on-chain code share one arithmetic story.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional

from .fixedpoint import from_float
from .inference import Dataset
from .model import ModelSpec, QuantizedModel, RELU

_IDENTIFIER_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class CodegenError(ValueError):
    """Invalid emission options."""


@dataclass(frozen=True)
class CodegenOptions:
    contract_name: str
    solidity_pragma: str = "^0.8.19"
    math_import: str = "@prb/math/src/SD59x18.sol"

    def __post_init__(self) -> None:
        if not _IDENTIFIER_RE.match(self.contract_name):
            raise CodegenError(f"contract name {self.contract_name!r} is not a valid identifier")
        if not self.solidity_pragma or not self.math_import:
            raise CodegenError("pragma and math import path must be non-empty")


def contract_name_for(model_name: str) -> str:
    """Derive a deterministic identifier from a free-form model name."""
    cleaned = re.sub(r"[^A-Za-z0-9_]", "_", model_name) or "Model"
    if cleaned[0].isdigit():
        cleaned = "M" + cleaned
    return cleaned[0].upper() + cleaned[1:]


def _setter(kind: str, lengths: list[int]) -> list[str]:
    # kind is "weights" or "biases"; one dispatch function covers all layers.
    param = "flat" if kind == "weights" else "values"
    fn = "setWeights" if kind == "weights" else "setBiases"
    lines = [f"    function {fn}(uint256 layer, int256[] calldata {param}) external {{"]
    for index, length in enumerate(lengths, start=1):
        lines += [
            f"        if (layer == {index}) {{",
            f'            require({param}.length == {length}, "{kind}{index}: bad length");',
            f"            {kind}{index} = {param};",
            "            return;",
            "        }",
        ]
    lines += [f'        revert("{fn}: unknown layer");', "    }"]
    return lines


def emit_contract(model: ModelSpec, options: CodegenOptions) -> str:
    """Render the full Solidity source unit for one model."""
    widths = [layer.neurons for layer in model.layers]
    depth = len(widths)
    has_hidden = depth > 1
    widths_text = " -> ".join(str(n) for n in [model.input_dim] + widths)

    lines = [
        "// SPDX-License-Identifier: MIT",
        f"pragma solidity {options.solidity_pragma};",
        "",
        f'import {{ SD59x18, sd }} from "{options.math_import}";',
        "",
        f'/// Feed-forward binary classifier generated from model "{model.name}".',
        f"/// Layer widths: {widths_text}; parameters and test rows are uploaded as",
        "/// raw signed 59.18-decimal fixed-point values (int256, scaled by 1e18).",
        f"contract {options.contract_name} {{",
    ]
    for index in range(1, depth + 1):
        lines.append(f"    int256[] internal weights{index};")
        lines.append(f"    int256[] internal biases{index};")
    lines += [
        "",
        "    int256[] internal testFeatures;",
        "    uint256[] internal testLabels;",
        "",
        f"    uint256 internal constant INPUT_DIM = {model.input_dim};",
        "    int256 internal constant HALF_RAW = 500000000000000000;",
        "",
    ]

    weight_lengths = [model.fan_in(k) * model.layers[k].neurons for k in range(depth)]
    bias_lengths = widths
    lines += _setter("weights", weight_lengths)
    lines.append("")
    lines += _setter("biases", bias_lengths)
    lines += [
        "",
        "    function uploadTestData(int256[] calldata flatFeatures, uint256[] calldata labels) external {",
        '        require(flatFeatures.length == labels.length * INPUT_DIM, "uploadTestData: row shape");',
        "        testFeatures = flatFeatures;",
        "        testLabels = labels;",
        "    }",
        "",
    ]

    if has_hidden:
        lines += [
            "    function reluActivation(SD59x18 x) internal pure returns (SD59x18) {",
            "        return x.unwrap() > 0 ? x : sd(0);",
            "    }",
            "",
        ]
    lines += [
        "    function sigmoidActivation(SD59x18 x) internal pure returns (SD59x18) {",
        "        SD59x18 one = sd(1000000000000000000);",
        "        if (x.unwrap() >= 0) {",
        "            return one.div(one + sd(-x.unwrap()).exp());",
        "        }",
        "        SD59x18 grown = x.exp();",
        "        return grown.div(one + grown);",
        "    }",
        "",
        "    function classify() external view returns (uint256 correct) {",
        "        uint256 rows = testLabels.length;",
        "        for (uint256 r = 0; r < rows; r++) {",
    ]

    for k, layer in enumerate(model.layers, start=1):
        neurons = layer.neurons
        if k == 1:
            fan = "INPUT_DIM"
            source = f"sd(testFeatures[r * INPUT_DIM + i])"
        else:
            fan = str(model.layers[k - 2].neurons)
            source = f"out{k - 1}[i]"
        activation = "reluActivation" if layer.activation == RELU else "sigmoidActivation"
        lines += [
            f"            SD59x18[{neurons}] memory out{k};",
            f"            for (uint256 j = 0; j < {neurons}; j++) {{",
            "                SD59x18 acc = sd(0);",
            f"                for (uint256 i = 0; i < {fan}; i++) {{",
            f"                    acc = acc + sd(weights{k}[j * {fan} + i]).mul({source});",
            "                }",
            f"                acc = acc + sd(biases{k}[j]);",
            f"                out{k}[j] = {activation}(acc);",
            "            }",
        ]

    lines += [
        f"            uint256 predicted = out{depth}[0].unwrap() >= HALF_RAW ? 1 : 0;",
        "            if (predicted == testLabels[r]) {",
        "                correct++;",
        "            }",
        "        }",
        "    }",
        "}",
    ]
    return "\n".join(lines) + "\n"


def emit_calldata(model: QuantizedModel, test: Optional[Dataset] = None) -> str:
    """Render the ordered upload manifest for one model (JSON text).

    Every scalar is decimal text: weights/biases/features are raw int256
    values, labels are 0/1. Entry order is the required call order —
    per-layer setters first, test data last. An empty or absent test set
    yields parameter calls only.
    """
    calls: list[dict] = []
    for index, layer in enumerate(model.layers, start=1):
        flat = [str(w.raw) for row in layer.weights for w in row]
        calls.append({"function": "setWeights", "layer": index, "args": [flat]})
        calls.append({"function": "setBiases", "layer": index,
                      "args": [[str(b.raw) for b in layer.biases]]})
    if test is not None and test.rows > 0:
        if test.width != model.input_dim:
            raise ValueError(f"dataset has {test.width} features, model expects {model.input_dim}")
        features = [str(from_float(v).raw) for row in test.features for v in row]
        labels = [str(label) for label in test.labels]
        calls.append({"function": "uploadTestData", "args": [features, labels]})
    return json.dumps(calls, indent=2) + "\n"
