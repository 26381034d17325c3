import json

import numpy as np
import pytest

from config.config import Config
from src.cli import RunConfig, build_parser, main
from src.cli.commands import EXIT_INPUT, EXIT_NUMERICAL, EXIT_OK
from src.source_optics import CoherenceCurve
from src.utils.data_io import DataIO
from src.utils.errors import ArgumentError, NumericalError


def _read_json(path):
    return json.loads(path.read_text())


def test_witness_bell_state(tmp_path):
    out = tmp_path / "witness.json"
    assert main(["witness", "--state", "psi-plus", "--output", str(out)]) == EXIT_OK
    report = _read_json(out)
    assert report["entangled"] is True
    assert report["global_purity"] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("state, purity", [("product", 1.0), ("werner:0.5", 0.4375)])
def test_witness_separable_inputs(tmp_path, state, purity):
    out = tmp_path / "witness.json"
    assert main(["witness", "--state", state, "--output", str(out)]) == EXIT_OK
    report = _read_json(out)
    assert report["entangled"] is False
    assert report["global_purity"] == pytest.approx(purity, abs=1e-12)


def test_witness_density_matrix_file(tmp_path):
    source = tmp_path / "rho.json"
    matrix = np.zeros((4, 4))
    matrix[0, 0] = matrix[3, 3] = matrix[0, 3] = matrix[3, 0] = 0.5
    DataIO.write_json(source, {"real": matrix.tolist(), "imag": np.zeros((4, 4)).tolist(), "dims": [2, 2]})
    out = tmp_path / "witness.json"
    assert main(["witness", "--state", "file", "--input", str(source), "--output", str(out)]) == EXIT_OK
    assert _read_json(out)["entangled"] is True


@pytest.mark.parametrize("state", ["werner:abc", "chi-plus", "file"])
def test_witness_bad_state_is_input_error(tmp_path, state):
    assert main(["witness", "--state", state, "--output", str(tmp_path / "w.json")]) == EXIT_INPUT


def test_coherence_tophat(tmp_path, capsys):
    out = tmp_path / "coherence.csv"
    code = main(["coherence", "--alpha", "1e-6", "--n-baselines", "50", "--output", str(out)])
    assert code == EXIT_OK
    columns = DataIO.read_csv(out, ("b", "C_analytic", "C_numeric"))
    assert columns["C_analytic"][0] == 1.0
    assert columns["C_numeric"][0] == pytest.approx(1.0, abs=1e-12)
    deviation = np.max(np.abs(np.array(columns["C_analytic"]) - np.array(columns["C_numeric"])))
    assert deviation <= 1e-6
    assert "max |C_analytic - C_numeric|" in capsys.readouterr().out


def test_coherence_double_model(tmp_path):
    out = tmp_path / "coherence.csv"
    code = main([
        "coherence", "--model", "double", "--alpha", "1e-6", "--beta", "5e-6",
        "--n-baselines", "80", "--output", str(out),
    ])
    assert code == EXIT_OK
    columns = DataIO.read_csv(out, ("b", "C_analytic", "C_numeric"))
    assert np.max(np.abs(np.array(columns["C_analytic"]) - np.array(columns["C_numeric"]))) <= 1e-6


def test_coherence_double_model_needs_beta(tmp_path):
    assert main(["coherence", "--model", "double", "--output", str(tmp_path / "c.csv")]) == EXIT_INPUT


def test_fock_two_sources(tmp_path):
    scan_out, probs_out = tmp_path / "g4.csv", tmp_path / "probs.json"
    code = main([
        "fock", "--separation", "0.8", "--n-baselines", "40",
        "--output", str(scan_out), "--probs-output", str(probs_out),
    ])
    assert code == EXIT_OK
    probs = _read_json(probs_out)
    assert probs["p_mixed_both"] == pytest.approx(0.5, abs=1e-10)
    assert probs["p_plusplus_at_1"] == pytest.approx(0.25, abs=1e-10)
    assert probs["p_minusminus_at_1"] == pytest.approx(0.25, abs=1e-10)
    assert probs["max_optics_deviation"] <= 1e-9
    assert probs["c1_magnitude"] < 0.5
    scan = CoherenceCurve.read_csv(scan_out, bounded=False)
    assert scan.values[0] == pytest.approx(1.0, abs=1e-12)
    assert scan.values.min() < 0.5


def test_fock_single_source_is_flat(tmp_path):
    scan_out, probs_out = tmp_path / "g4.csv", tmp_path / "probs.json"
    code = main([
        "fock", "--sources", "1", "--n-baselines", "20",
        "--output", str(scan_out), "--probs-output", str(probs_out),
    ])
    assert code == EXIT_OK
    probs = _read_json(probs_out)
    assert probs["scan_max"] - probs["scan_min"] <= 1e-12


def test_fock_rejects_odd_mode_count(tmp_path):
    assert main(["fock", "--n-modes", "7", "--output", str(tmp_path / "g4.csv")]) == EXIT_INPUT


def test_synthesize_then_fit_round_trip(tmp_path):
    data, result = tmp_path / "synthetic.csv", tmp_path / "fit.json"
    assert main(["synthesize", "--alpha", "1e-6", "--output", str(data)]) == EXIT_OK
    assert main(["fit", "--input", str(data), "--seed", "0", "--output", str(result)]) == EXIT_OK
    payload = _read_json(result)
    assert payload["converged"] is True
    assert payload["params"][0] == pytest.approx(1e-6, rel=1e-6)
    assert payload["rng_algorithm"] == "Philox-4x64"
    assert payload["seed"] == 0


def test_synthesize_is_seeded(tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (first, second):
        assert main([
            "synthesize", "--alpha", "1e-6", "--sigma", "0.01", "--seed", "17", "--output", str(path),
        ]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_fit_with_too_few_samples(tmp_path):
    data = tmp_path / "short.csv"
    data.write_text("b,C\n0.0,1.0\n0.1,0.5\n0.2,0.1\n")
    assert main(["fit", "--input", str(data), "--output", str(tmp_path / "fit.json")]) == EXIT_INPUT


def test_fit_with_malformed_csv(tmp_path, capsys):
    data = tmp_path / "bad.csv"
    data.write_text("b,C\n0.0,1.0\n0.1,oops\n")
    assert main(["fit", "--input", str(data)]) == EXIT_INPUT
    assert "line 3" in capsys.readouterr().err


def test_fit_with_missing_file(tmp_path):
    assert main(["fit", "--input", str(tmp_path / "missing.csv")]) == EXIT_INPUT


def test_expansion_prints_coefficients(tmp_path, capsys):
    out = tmp_path / "expansion.json"
    assert main(["expansion", "--input", "psi-plus", "--output", str(out)]) == EXIT_OK
    printed = json.loads(capsys.readouterr().out)
    assert printed == _read_json(out)
    assert printed["pairing"] == "13,24"


def test_expansion_rejects_unknown_state():
    assert main(["expansion", "--input", "chi-plus"]) == EXIT_INPUT


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert "Philox-4x64" in capsys.readouterr().out


def test_unknown_flag_exits_with_input_error():
    with pytest.raises(SystemExit) as excinfo:
        main(["witness", "--bogus"])
    assert excinfo.value.code == EXIT_INPUT


def test_abbreviated_flag_is_rejected():
    with pytest.raises(SystemExit) as excinfo:
        main(["witness", "--sta", "product"])
    assert excinfo.value.code == EXIT_INPUT


def test_run_config_validation():
    with pytest.raises(ArgumentError):
        RunConfig("coherence", k=-1.0)
    with pytest.raises(ArgumentError):
        RunConfig("synthesize", seed=2 ** 64)
    config = RunConfig.from_namespace(build_parser().parse_args(["synthesize", "--alpha", "2e-6"]))
    assert config.params == [2e-6]


def test_fit_without_convergence_exits_with_numerical_error(tmp_path, monkeypatch, capsys):
    data, result = tmp_path / "noisy.csv", tmp_path / "fit.json"
    assert main([
        "synthesize", "--alpha", "1e-6", "--sigma", "0.01", "--seed", "3", "--output", str(data),
    ]) == EXIT_OK
    monkeypatch.setattr(Config, "FIT_MAX_ITER", 1)
    assert main(["fit", "--input", str(data), "--output", str(result)]) == EXIT_NUMERICAL == 2
    payload = _read_json(result)
    assert payload["converged"] is False
    assert payload["iterations"] == 1
    assert "converged = false" in capsys.readouterr().out


def test_quadrature_failure_exits_with_numerical_error(tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(Config, "QUADRATURE_MAX_DOUBLINGS", 1)
    monkeypatch.setattr(Config, "QUADRATURE_START_POINTS", 5)
    out = tmp_path / "coherence.csv"
    assert main(["coherence", "--alpha", "1e-6", "--n-baselines", "50", "--output", str(out)]) == EXIT_NUMERICAL
    assert not out.exists()
    assert "error:" in capsys.readouterr().err


def test_fock_numerical_failure_exits_with_numerical_error(tmp_path, monkeypatch):
    def vanishing_scan(*args, **kwargs):
        raise NumericalError("reference coincidence rate vanishes")

    monkeypatch.setattr("src.cli.commands.normalized_g4_scan", vanishing_scan)
    code = main(["fock", "--n-baselines", "10", "--output", str(tmp_path / "g4.csv"),
                 "--probs-output", str(tmp_path / "probs.json")])
    assert code == EXIT_NUMERICAL


def test_fock_outputs_do_not_depend_on_separation(tmp_path):
    payloads = []
    for separation in ("0.0", "0.8", "3.1"):
        probs_out = tmp_path / f"probs_{separation}.json"
        assert main([
            "fock", "--separation", separation, "--n-baselines", "20",
            "--output", str(tmp_path / f"g4_{separation}.csv"), "--probs-output", str(probs_out),
        ]) == EXIT_OK
        payloads.append(_read_json(probs_out))
    for payload in payloads[1:]:
        for key in ("p_mixed_both", "p_plusplus_at_1", "p_minusminus_at_1", "scan_min", "scan_max"):
            assert payload[key] == pytest.approx(payloads[0][key], abs=1e-12)
