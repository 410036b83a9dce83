import json

import pytest
from click.testing import CliRunner

from mcp_schmidt_benchmark.cli import main
from mcp_schmidt_benchmark.quantum.channels import channel_to_dict, depolarizing, identity_channel, saturating_channel


@pytest.fixture
def runner():
    return CliRunner()


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_thresholds_table(runner):
    result = runner.invoke(main, ["thresholds", "--d", "2"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "Schmidt-number thresholds (d=2, mode=qudit)"
    assert lines[3].split() == ["1", "0.75", "0.666667", "0.5"]


def test_thresholds_json(runner):
    result = runner.invoke(main, ["thresholds", "--d", "4", "--json"])
    payload = json.loads(result.output)
    assert [r["threshold"] for r in payload["rows"]] == [0.625, 0.75, 0.875]
    result = runner.invoke(main, ["thresholds", "--d", "8", "--mode", "qubits", "--json"])
    assert json.loads(result.output)["rows"][-1]["threshold"] == 0.9375


def test_thresholds_invalid_dimension(runner):
    result = runner.invoke(main, ["thresholds", "--d", "6", "--mode", "qubits"])
    assert result.exit_code == 2
    assert "2^n" in result.output


@pytest.mark.parametrize("channel, d, f_avg, certified, code", [
    (identity_channel(2), 2, 1.0, 2, 0),
    (saturating_channel(4, 2), 4, 0.75, 2, 0),
    (depolarizing(4, 0.1), 4, 0.925, 4, 0),
    (saturating_channel(3, 1), 3, 2 / 3, 1, 3),
])
def test_eval_channel_files(runner, tmp_path, channel, d, f_avg, certified, code):
    path = _write(tmp_path, "channel.json", channel_to_dict(channel))
    result = runner.invoke(main, ["eval", "--channel", path, "--json"])
    assert result.exit_code == code
    payload = json.loads(result.output)
    assert abs(payload["report"]["f_avg"] - f_avg) < 1e-12
    assert payload["path_difference"] < 1e-10
    assert payload["certificate"]["certified_schmidt_number"] == certified


def test_eval_builtin_cnot(runner):
    result = runner.invoke(main, ["eval", "--channel", "cnot-depol:0.1", "--d", "4", "--target", "cnot",
                                  "--mode", "qubits"])
    assert result.exit_code == 0
    assert "F_E (via Choi)" in result.output
    assert "certified Schmidt number >=" in result.output


def test_eval_reports_trace_violation(runner, tmp_path):
    path = _write(tmp_path, "bad.json", {"d": 2, "kraus": [[[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]]})
    result = runner.invoke(main, ["eval", "--channel", path])
    assert result.exit_code == 2
    assert "residual" in result.output


def test_eval_dimension_mismatch(runner, tmp_path):
    path = _write(tmp_path, "id.json", channel_to_dict(identity_channel(2)))
    result = runner.invoke(main, ["eval", "--channel", path, "--target", "cnot"])
    assert result.exit_code == 2


@pytest.mark.parametrize("f_avg, d, certified, code", [(0.90, 2, 2, 0), (0.86, 4, 3, 0), (0.89, 4, 4, 0),
                                                       (0.625, 4, 1, 3)])
def test_certify(runner, tmp_path, f_avg, d, certified, code):
    path = _write(tmp_path, "data.json", {"d": d, "f_avg": f_avg})
    result = runner.invoke(main, ["certify", "--data", path, "--json"])
    assert result.exit_code == code
    payload = json.loads(result.output)
    assert set(payload) == {"d", "f_avg", "thresholds", "certified_schmidt_number", "margin"}
    assert payload["certified_schmidt_number"] == certified


def test_certify_schema_errors(runner, tmp_path):
    path = _write(tmp_path, "data.json", {"d": 3, "z_fidelities": [1, 1], "x_fidelities": [1, 1, 2]})
    result = runner.invoke(main, ["certify", "--data", path])
    assert result.exit_code == 2
    assert "z_fidelities has 2 entries" in result.output or "x_fidelities" in result.output
    result = runner.invoke(main, ["certify", "--data", str(tmp_path / "none.json")])
    assert result.exit_code == 2


def test_verify_bounds_json_is_deterministic(runner):
    args = ["verify-bounds", "--d-max", "2", "--seed", "7", "--restarts", "3", "--json"]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.exit_code == 0
    assert first.output == second.output
    payload = json.loads(first.output)
    assert payload["seed"] == 7 and payload["rank_pairs"] == 2


def test_verify_bounds_rejects_bad_flags(runner):
    assert runner.invoke(main, ["verify-bounds", "--restarts", "0"]).exit_code == 2
    assert runner.invoke(main, ["verify-bounds", "--seed", "-1"]).exit_code == 2


def test_reproduce_paper(runner):
    result = runner.invoke(main, ["reproduce-paper", "--json"])
    assert result.exit_code == 0
    rows = json.loads(result.output)["experiments"]
    assert [r["certified_schmidt_number"] for r in rows] == [2, 3, 4]
    assert rows[0]["conclusion"] == "outperforms any classical MP scheme"
    assert "does not ensure outperforming the channels of Schmidt number 3" in rows[1]["conclusion"]
    assert rows[2]["conclusion"] == (
        "outperforms any channel of Schmidt number 3; "
        "ensures the full-dimensional coherence of the demonstrated two-qubit gate"
    )
    assert [(r["benchmark_settings"], r["tomography_settings"]) for r in rows] == [(8, 16), (32, 256), (32, 256)]


def test_reproduce_paper_table(runner):
    result = runner.invoke(main, ["reproduce-paper"])
    assert result.exit_code == 0
    assert "0.625/0.75/0.875" in result.output
    assert "outperforms any classical MP scheme" in result.output
