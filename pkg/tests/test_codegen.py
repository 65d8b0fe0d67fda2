"""Emitter determinism, golden files, structural counts, and manifest shape."""
import json
import random
import shutil
import subprocess

import pytest

from mlp2sol.codegen import (CodegenError, CodegenOptions, contract_name_for, emit_calldata,
                             emit_contract)
from mlp2sol.inference import Dataset, load_dataset
from mlp2sol.model import parse_model, quantize
from mlp2sol.synth import make_model

GOLDEN_CONTRACTS = {
    "model_1l1n": "Model1L1N",
    "model_2l2n": "Model2L2N",
    "model_3l4n": "Model3L4N",
}


def load_fixture(fixtures_dir, stem):
    return parse_model((fixtures_dir / "models" / f"{stem}.json").read_bytes())


class TestGolden:
    @pytest.mark.parametrize("stem,contract", sorted(GOLDEN_CONTRACTS.items()))
    def test_contract_matches_golden_bytes(self, fixtures_dir, stem, contract):
        model = load_fixture(fixtures_dir, stem)
        source = emit_contract(model, CodegenOptions(contract_name=contract))
        golden = (fixtures_dir / "golden" / f"{stem}.sol").read_text(encoding="utf-8")
        assert source == golden

    @pytest.mark.parametrize("stem,contract", sorted(GOLDEN_CONTRACTS.items()))
    def test_manifest_matches_golden_bytes(self, fixtures_dir, test50_path, stem, contract):
        model = load_fixture(fixtures_dir, stem)
        manifest = emit_calldata(quantize(model), load_dataset(test50_path))
        golden = (fixtures_dir / "golden" / f"{stem}.calldata.json").read_text(encoding="utf-8")
        assert manifest == golden

    def test_emission_is_deterministic(self, fixtures_dir, test50_path):
        model = load_fixture(fixtures_dir, "model_3l4n")
        options = CodegenOptions(contract_name="Model3L4N")
        assert emit_contract(model, options) == emit_contract(model, options)
        quantized = quantize(model)
        test = load_dataset(test50_path)
        assert emit_calldata(quantized, test) == emit_calldata(quantized, test)


class TestStructure:
    def test_single_layer_has_no_relu(self, fixtures_dir):
        source = emit_contract(load_fixture(fixtures_dir, "model_1l1n"),
                               CodegenOptions(contract_name="Model1L1N"))
        assert "reluActivation" not in source
        assert source.count("int256[] internal weights") == 1
        assert source.count("int256[] internal biases") == 1
        assert source.count("function setWeights") == 1
        assert source.count("function setBiases") == 1
        assert source.count("function classify") == 1
        assert source.count("sigmoidActivation(acc)") == 1

    def test_three_layer_relu_call_sites(self, fixtures_dir):
        source = emit_contract(load_fixture(fixtures_dir, "model_3l4n"),
                               CodegenOptions(contract_name="Model3L4N"))
        assert source.count("int256[] internal weights") == 3
        assert source.count("int256[] internal biases") == 3
        assert source.count("reluActivation(acc)") == 2
        assert source.count("sigmoidActivation(acc)") == 1

    def test_structural_counts_on_random_architectures(self):
        rng = random.Random(31)
        for trial in range(40):
            layer_count = rng.randint(1, 4)
            width = rng.randint(1, 6)
            input_dim = rng.randint(1, 9)
            model = make_model(trial, layer_count, width, input_dim, name=f"r{trial}")
            source = emit_contract(model, CodegenOptions(contract_name="R"))
            assert source.count("int256[] internal weights") == layer_count
            assert source.count("int256[] internal biases") == layer_count
            assert source.count("reluActivation(acc)") == layer_count - 1
            assert source.count("sigmoidActivation(acc)") == 1
            assert source.count("function ") == 5 + (1 if layer_count > 1 else 0)

    def test_accumulation_order_is_multiply_bias_activation(self, fixtures_dir):
        # Per layer: zero init, then weight*input accumulation, then the bias,
        # then the activation — the same order the simulator documents.
        source = emit_contract(load_fixture(fixtures_dir, "model_2l2n"),
                               CodegenOptions(contract_name="Model2L2N"))
        for layer, fan in ((1, "INPUT_DIM"), (2, "2")):
            init = source.index("SD59x18 acc = sd(0);", source.index(f"memory out{layer};"))
            accumulate = source.index(f"acc = acc + sd(weights{layer}[j * {fan} + i]).mul(", init)
            bias = source.index(f"acc = acc + sd(biases{layer}[j]);", accumulate)
            activation = source.index("Activation(acc);", bias)
            assert init < accumulate < bias < activation

    def test_threshold_constant_present(self, fixtures_dir):
        source = emit_contract(load_fixture(fixtures_dir, "model_1l1n"),
                               CodegenOptions(contract_name="X"))
        assert "int256 internal constant HALF_RAW = 500000000000000000;" in source
        assert ".unwrap() >= HALF_RAW ? 1 : 0;" in source


class TestOptions:
    @pytest.mark.parametrize("bad", ["", "2Fast", "has-dash", "with space", "emoji🙂"])
    def test_invalid_contract_names_rejected(self, bad):
        with pytest.raises(CodegenError):
            CodegenOptions(contract_name=bad)

    def test_name_derivation(self):
        assert contract_name_for("fixture-2L2N-s11") == "Fixture_2L2N_s11"
        assert contract_name_for("7model") == "M7model"
        assert contract_name_for("") == "Model"


class TestManifest:
    def test_counts_for_single_layer(self, fixtures_dir):
        quantized = quantize(load_fixture(fixtures_dir, "model_1l1n"))
        calls = json.loads(emit_calldata(quantized))
        assert [c["function"] for c in calls] == ["setWeights", "setBiases"]
        assert calls[0]["layer"] == 1
        assert len(calls[0]["args"][0]) == 30
        assert len(calls[1]["args"][0]) == 1

    def test_raw_scale_of_arguments(self):
        body = {"name": "h", "input_dim": 1,
                "layers": [{"neurons": 1, "activation": "sigmoid",
                            "weights": [["0.5"]], "biases": ["-1"]}]}
        quantized = quantize(parse_model(json.dumps(body).encode()))
        calls = json.loads(emit_calldata(quantized))
        assert calls[0]["args"][0] == ["500000000000000000"]
        assert calls[1]["args"][0] == ["-1000000000000000000"]

    def test_empty_test_set_omits_upload(self, fixtures_dir):
        quantized = quantize(load_fixture(fixtures_dir, "model_2l2n"))
        empty = Dataset(tuple(f"f{i}" for i in range(30)), (), ())
        calls = json.loads(emit_calldata(quantized, empty))
        assert all(c["function"] != "uploadTestData" for c in calls)

    def test_upload_is_last_and_flat(self, fixtures_dir, test50_path):
        quantized = quantize(load_fixture(fixtures_dir, "model_2l2n"))
        test = load_dataset(test50_path)
        calls = json.loads(emit_calldata(quantized, test))
        assert calls[-1]["function"] == "uploadTestData"
        features, labels = calls[-1]["args"]
        assert len(features) == test.rows * test.width
        assert len(labels) == test.rows
        assert set(labels) <= {"0", "1"}
        # Setter order: weights then biases for each layer in turn.
        heads = [(c["function"], c.get("layer")) for c in calls[:-1]]
        assert heads == [("setWeights", 1), ("setBiases", 1), ("setWeights", 2), ("setBiases", 2)]

    def test_width_mismatch_rejected(self, fixtures_dir):
        quantized = quantize(load_fixture(fixtures_dir, "model_2l2n"))
        narrow = Dataset(("a",), ((0.5,),), (1,))
        with pytest.raises(ValueError, match="features"):
            emit_calldata(quantized, narrow)


@pytest.mark.skipif(shutil.which("solc") is None, reason="no Solidity compiler on PATH")
def test_generated_source_compiles(fixtures_dir, tmp_path, model_paths):
    """Environment-gated: compile the single-layer contract with solc.

    Needs both a solc binary and a fixed-point math library checkout reachable
    through the import remapping below (set MLP2SOL_PRBMATH to its root).
    """
    import os

    library_root = os.environ.get("MLP2SOL_PRBMATH")
    if not library_root:
        pytest.skip("MLP2SOL_PRBMATH not set; cannot resolve the math import")
    model = parse_model(model_paths["1l1n"].read_bytes())
    source_path = tmp_path / "Model1L1N.sol"
    source_path.write_text(emit_contract(model, CodegenOptions(contract_name="Model1L1N")),
                           encoding="utf-8")
    result = subprocess.run(
        ["solc", "--bin", f"@prb/math/={library_root}/", str(source_path)],
        capture_output=True, text=True,
    )
    assert result.returncode == 0, result.stderr
