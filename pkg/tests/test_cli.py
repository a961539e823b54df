import json

import pytest

from majorise.config import Config, setting
from majorise.main import run_cli
from majorise.services.oracle_service import orbit_polytope
from majorise.utils.exceptions import SizeLimit
from tests.conftest import equal

SPACE = {"atoms": [{"id": "a", "weight": "1/2"}, {"id": "b", "weight": "1/2"}], "diffuse_mass": "0"}


def function(a, b):
    return {"space": SPACE, "atoms": {"a": a, "b": b}}


@pytest.fixture
def pair(write_json):
    return write_json("x.json", function("2", "2")), write_json("y.json", function("3", "1"))


def test_settings_follow_the_app_config(app):
    assert setting("TOLERANCE") == app.config["TOLERANCE"]
    assert setting("TOLERANCE", 1e-3) == 1e-3
    app.config["ORACLE_MAX_ATOMS"] = 2
    with pytest.raises(SizeLimit):
        orbit_polytope(equal(3, 2, 1))
    assert orbit_polytope(equal(3, 2, 1), max_atoms=3).constraint_count == 8


def test_settings_fall_back_to_the_defaults_outside_an_app():
    assert setting("ENUMERATE_MAX_ATOMS") == Config.ENUMERATE_MAX_ATOMS


def test_rearrange_constant(runner, write_json):
    path = write_json("f.json", {"space": {"atoms": [], "diffuse_mass": "1"}, "diffuse": [{"value": "5", "mass": "1"}]})
    result = runner.invoke(args=["rearrange", "-f", path])
    assert result.exit_code == 0
    assert json.loads(result.stdout) == {"steps": [{"value": "5", "length": "1"}]}


def test_rearrange_normalize(runner, write_json):
    document = {
        "space": {"atoms": [{"id": "a", "weight": "1"}, {"id": "b", "weight": "3"}], "diffuse_mass": "0"},
        "atoms": {"a": "4", "b": "0"},
    }
    result = runner.invoke(args=["rearrange", "-f", write_json("f.json", document), "--normalize"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["steps"][0] == {"value": "4", "length": "1/4"}


def test_extreme_with_witness(runner, pair):
    x_path, y_path = pair
    result = runner.invoke(args=["extreme", "-x", x_path, "-y", y_path, "--witness"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["verdict"] == "not_extreme"
    assert data["witness"]["delta"] == "1/2"
    assert data["witness"]["x_plus"]["atoms"] == {"a": "5/2", "b": "3/2"}


def test_extreme_without_witness_flag(runner, pair):
    x_path, y_path = pair
    data = json.loads(runner.invoke(args=["extreme", "-x", x_path, "-y", y_path]).stdout)
    assert data["verdict"] == "not_extreme"
    assert "witness" not in data


def test_witness_command(runner, pair, write_json):
    x_path, y_path = pair
    data = json.loads(runner.invoke(args=["witness", "-x", x_path, "-y", y_path]).stdout)
    assert data["verified"] is True
    assert data["case"] == "split_level"

    extreme = write_json("p.json", function("1", "3"))
    result = runner.invoke(args=["witness", "-x", extreme, "-y", y_path])
    assert result.exit_code == 2
    assert json.loads(result.stdout)["error"] == "CriterionSatisfied"


def test_majorise_accepts_scale_documents(runner, pair, write_json):
    x_path, _ = pair
    y_path = write_json("ys.json", {"steps": [{"value": "3", "length": "1/2"}, {"value": "1", "length": "1/2"}]})
    data = json.loads(runner.invoke(args=["majorise", "-x", x_path, "-y", y_path]).stdout)
    assert data["holds"] is True
    assert data["slacks"][0] == {"t": "1/2", "slack": "1/2"}


def test_oracle_and_enumerate(runner, pair):
    x_path, y_path = pair
    data = json.loads(runner.invoke(args=["oracle", "-x", x_path, "-y", y_path]).stdout)
    assert data == {"extreme": False, "tight": [["a", "b"]]}

    points = json.loads(runner.invoke(args=["enumerate", "-y", y_path]).stdout)
    assert [p["atoms"] for p in points] == [{"a": "1", "b": "3"}, {"a": "3", "b": "1"}]


def test_malformed_rational(runner, write_json, pair):
    _, y_path = pair
    x_path = write_json("bad.json", function("0.5", "2"))
    result = runner.invoke(args=["extreme", "-x", x_path, "-y", y_path])
    assert result.exit_code == 2
    assert json.loads(result.stdout)["error"] == "SchemaError"


def test_missing_input_file(runner, tmp_path, pair):
    x_path, _ = pair
    result = runner.invoke(args=["extreme", "-x", x_path, "-y", str(tmp_path / "nope.json")])
    assert result.exit_code == 2
    assert json.loads(result.stdout)["error"] == "InputError"


def test_x_outside_the_orbit(runner, pair):
    x_path, y_path = pair
    result = runner.invoke(args=["extreme", "-x", y_path, "-y", x_path])
    assert result.exit_code == 2
    assert json.loads(result.stdout)["error"] == "NotInOrbit"


def test_matrix_commands(runner, write_json):
    pair_path = write_json("m.json", {"n": 2, "re": [[2, 1], [1, 2]]})
    diag_path = write_json("d.json", {"n": 2, "re": [[1, 0], [0, 3]]})

    data = json.loads(runner.invoke(args=["matrix-eig", "-f", pair_path]).stdout)
    assert data == {"steps": [{"value": "3", "length": "1/2"}, {"value": "1", "length": "1/2"}]}

    result = runner.invoke(args=["matrix-extreme", "-x", diag_path, "-y", pair_path])
    assert json.loads(result.stdout) == {"extreme": True}

    near_path = write_json("near.json", {"n": 2, "re": [[1.0000002, 0], [0, 2.9999998]]})
    result = runner.invoke(args=["matrix-extreme", "-x", near_path, "-y", pair_path])
    assert result.exit_code == 0
    assert json.loads(result.stdout) == {"extreme": False}

    result = runner.invoke(args=["matrix-extreme", "-x", pair_path, "-y", pair_path])
    assert result.exit_code == 2
    assert json.loads(result.stdout)["error"] == "NotDiagonal"


def test_birkhoff_and_ttransform(runner, write_json):
    ds_path = write_json("s.json", {"n": 2, "re": [[0.5, 0.5], [0.5, 0.5]]})
    data = json.loads(runner.invoke(args=["birkhoff", "-f", ds_path]).stdout)
    assert [t["coefficient"] for t in data["terms"]] == [0.5, 0.5]
    assert data["residual"] == 0.0

    x_path, y_path = write_json("x.json", [2, 2]), write_json("y.json", {"values": [3, 1]})
    data = json.loads(runner.invoke(args=["ttransform", "-x", x_path, "-y", y_path]).stdout)
    assert data["entries"] == [[0.5, 0.5], [0.5, 0.5]]


def test_suite_command(runner):
    result = runner.invoke(args=["suite", "--seed", "7", "-n", "3", "--trials", "20"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["violations"] == 0


def test_json_indent(runner, pair):
    x_path, y_path = pair
    result = runner.invoke(args=["extreme", "-x", x_path, "-y", y_path, "--json-indent", "2"])
    assert result.stdout.startswith('{\n  "verdict"')


def test_selftest_passes(runner):
    result = runner.invoke(args=["selftest", "--seed", "1", "--trials", "100"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["ok"] is True
    assert {c["name"] for c in data["checks"]} >= {"oracle_agreement", "witness_soundness", "golden_examples"}
    witness = next(c for c in data["checks"] if c["name"] == "witness_soundness")
    assert witness["passed"] >= 100
    assert witness["failed"] == 0
    assert "selftest finished" in result.stderr


def test_selftest_is_deterministic(runner):
    first = runner.invoke(args=["selftest", "--seed", "5", "--trials", "8"])
    second = runner.invoke(args=["selftest", "--seed", "5", "--trials", "8"])
    assert first.stdout == second.stdout


def test_selftest_without_trials(runner):
    result = runner.invoke(args=["selftest", "--seed", "1", "--trials", "0"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["warnings"] == ["0 trials"]


def test_selftest_catches_the_atomicity_mutation(runner):
    result = runner.invoke(args=["selftest", "--seed", "1", "--trials", "100", "--mutate", "ignore-atomicity"])
    assert result.exit_code != 0
    assert json.loads(result.stdout)["ok"] is False


def test_usage_error(capsys):
    assert run_cli(["extreme", "--bogus"], config_name="testing") == 2
    assert json.loads(capsys.readouterr().out)["error"] == "UsageError"


def test_unknown_command(capsys):
    assert run_cli(["frobnicate"], config_name="testing") == 2
    assert json.loads(capsys.readouterr().out)["error"] == "UsageError"
