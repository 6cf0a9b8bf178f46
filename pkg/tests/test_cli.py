import json

import pytest

from queens_lab import cli, core
from queens_lab.core import ValidityReport


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv)
    assert code == 0, err
    return json.loads(out)


def test_construct(capsys):
    payload = run_json(capsys, ["construct", "--k", "1"])
    assert payload == {"n": 5, "p": [0, 2, 4, 1, 3]}


def test_construct_output_parses_as_config(capsys):
    code, out, _ = run(capsys, ["construct", "--k", "2"])
    assert code == 0
    config = core.parse(out)
    assert config.n == 17


def test_count_classical(capsys):
    payload = run_json(capsys, ["count", "--n", "8", "--mode", "classical"])
    assert payload["count"] == 92
    assert payload["nodes_visited"] > 0
    assert "elapsed" not in payload


def test_count_oracle(capsys):
    payload = run_json(capsys, ["count", "--n", "5", "--mode", "toroidal", "--oracle"])
    assert payload["count"] == 10
    assert payload["oracle"] is True


def test_count_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["count", "--n", "0", "--mode", "classical"])
    assert info.value.code == 2


def test_count_domain_error(capsys):
    code, out, err = run(capsys, ["count", "--n", "30", "--mode", "classical"])
    assert code == 1
    assert out == ""
    error = json.loads(err)
    assert error["status"] == "error"
    assert error["code"] == "size-limit"


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 2


def test_flips_count_and_list(capsys):
    payload = run_json(capsys, ["flips", "--k", "1", "--count"])
    assert payload == {"k": 1, "n": 5, "count": 5}
    listed = run_json(capsys, ["flips", "--k", "1", "--list"])
    assert len(listed["flips"]) == 5
    first = listed["flips"][0]
    assert set(first) == {"removed", "added", "canonical_id"}
    assert first["canonical_id"] == [0, 1]


def test_generate_valid_and_deterministic(capsys):
    code1, out1, _ = run(capsys, ["generate", "--k", "3", "--t", "4", "--seed", "9"])
    code2, out2, _ = run(capsys, ["generate", "--k", "3", "--t", "4", "--seed", "9"])
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    config = core.QueensConfig(n=payload["config"]["n"], p=tuple(payload["config"]["p"]))
    assert core.validate_toroidal(config).is_valid
    assert len(payload["flips"]) == 4


def test_generate_exhaustion_is_domain_error(capsys):
    code, _, err = run(capsys, ["generate", "--k", "1", "--t", "2"])
    assert code == 1
    assert json.loads(err)["code"] == "greedy-exhausted"


def test_hg_stats_and_bound(capsys):
    payload = run_json(
        capsys,
        ["hg", "--family", "torus", "--params", '{"n":5}', "--stats", "--count-pm", "--bound"],
    )
    assert payload["stats"]["num_vertices"] == 20
    assert payload["stats"]["k"] == 5
    assert payload["perfect_matchings"] == 10
    assert payload["bound"]["d"] == 4
    assert "log_count_over_log_bound" in payload


def test_hg_emits_exchange_format(capsys, tmp_path):
    payload = run_json(capsys, ["hg", "--family", "transversal", "--params", '{"order":3}'])
    assert payload["n"] == 9
    assert len(payload["edges"]) == 9
    path = tmp_path / "hg.json"
    path.write_text(json.dumps(payload))
    stats = run_json(capsys, ["hg", "--in", str(path), "--stats", "--count-pm"])
    assert stats["family"] == "custom"
    assert stats["perfect_matchings"] == 3


def test_hg_requires_family_or_input():
    with pytest.raises(SystemExit) as info:
        cli.main(["hg", "--stats"])
    assert info.value.code == 2


def test_hg_params_usage_errors():
    with pytest.raises(SystemExit) as info:
        cli.main(["hg", "--family", "torus", "--params", "{}", "--stats"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["hg", "--family", "torus", "--params", "not-json", "--stats"])
    assert info.value.code == 2


def test_bounds_alpha(capsys):
    payload = run_json(capsys, ["bounds", "--alpha"])
    assert 1.587 < payload["closed_form"] < 1.588
    assert payload["difference"] <= 1e-9


def test_bounds_requires_one_action():
    with pytest.raises(SystemExit) as info:
        cli.main(["bounds"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["bounds", "--alpha", "--dmatrix", "5"])
    assert info.value.code == 2


def test_bounds_log_values(capsys):
    import math

    torus = run_json(capsys, ["bounds", "--torus-log", "21"])
    assert torus["log_bound"] == pytest.approx(21 * (math.log(21) - 3.0))
    classical = run_json(capsys, ["bounds", "--classical-log", "8"])
    assert classical["log_bound"] == pytest.approx(8 * (math.log(8) - classical["alpha"]))


def test_bounds_dmatrix_csv(capsys):
    code, out, _ = run(capsys, ["bounds", "--dmatrix", "5", "--format", "csv"])
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert rows[0] == ["4", "4", "4", "4", "4"]
    assert rows[2][2] == "8"


def test_bounds_profile_from_file(capsys, tmp_path):
    path = tmp_path / "config.json"
    path.write_text('{"n":4,"p":[1,3,0,2]}')
    payload = run_json(capsys, ["bounds", "--profile", "--in", str(path)])
    assert payload["concentric_sum"] == 12
    assert payload["profiles"][0] == {"row": 0, "by_three": 1, "by_two": 0, "by_one": 2}
    code, out, _ = run(capsys, ["bounds", "--profile", "--in", str(path), "--format", "csv"])
    assert code == 0
    assert out.splitlines()[0] == "row,by_three,by_two,by_one"


def test_bounds_check_lemmas(capsys):
    payload = run_json(capsys, ["bounds", "--check-lemmas", "--n", "5"])
    assert payload["passed"] is True
    assert payload["solutions"] == 10


def test_csv_rejected_elsewhere(capsys):
    code, _, err = run(capsys, ["bounds", "--alpha", "--format", "csv"])
    assert code == 1
    assert "csv" in json.loads(err)["message"]


def test_out_flag_writes_file(capsys, tmp_path):
    path = tmp_path / "config.json"
    code, out, _ = run(capsys, ["construct", "--k", "1", "--out", str(path)])
    assert code == 0
    assert out == ""
    assert core.parse(path.read_text()).n == 5


def test_verify_quick_passes(capsys):
    payload = run_json(capsys, ["verify", "--level", "quick"])
    assert payload["passed"] is True
    assert payload["failed"] == []
    assert payload["num_checks"] > 20


def test_verify_quick_repeat_is_byte_identical(capsys):
    _, out1, _ = run(capsys, ["verify", "--level", "quick"])
    _, out2, _ = run(capsys, ["verify", "--level", "quick"])
    assert out1 == out2


def test_verify_detects_tampered_validator(capsys, monkeypatch):
    # Negative control: a validator that waves everything through must
    # make the oracle comparisons fail and the suite exit nonzero.
    monkeypatch.setattr(
        "queens_lab.core.validate_toroidal",
        lambda config: ValidityReport(is_valid=True, violations=()),
    )
    code, out, _ = run(capsys, ["verify", "--level", "quick"])
    assert code == 1
    payload = json.loads(out)
    assert payload["passed"] is False
    assert "count-toroidal-matches-oracle" in payload["failed"]


def test_env_cap_reaches_cli(capsys, monkeypatch):
    monkeypatch.setenv("QUEENS_LAB_CAP", "6")
    code, _, err = run(capsys, ["count", "--n", "8", "--mode", "classical"])
    assert code == 1
    assert json.loads(err)["code"] == "size-limit"


def test_dispatch_result_fields():
    result = cli.dispatch(["construct", "--k", "1"])
    assert result.command == "construct"
    assert result.status == "ok"
    assert result.params["k"] == 1
    assert result.elapsed >= 0.0
