import json
import subprocess
import sys
from fractions import Fraction

import pytest

from lenswall.cli import main
from lenswall.errors import ParameterError
from lenswall.scenario import Scenario, format_rational, load_scenario, parse_rational


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_rho_command(capsys):
    doc = run_json(capsys, "rho", "--order", "2", "--q", "1", "--s", "1")
    assert doc["results"]["value"] == "1/4"
    assert doc["provenance"]["toolkit"] == "lenswall"


def test_rho_approx_flag(capsys):
    doc = run_json(capsys, "--approx", "rho", "--order", "2", "--q", "1", "--s", "1")
    assert doc["results"]["value"] == "1/4"
    assert doc["results"]["value_approx"] == 0.25


def test_eta_command_formulas(capsys):
    base = run_json(capsys, "eta", "--p", "3", "--q", "1", "--s", "1")
    assert base["results"]["value"] == "-1/4"
    for formula in ("half-roots", "odd-p"):
        doc = run_json(capsys, "eta", "--p", "3", "--q", "1", "--s", "1", "--formula", formula)
        assert doc["results"]["value"] == "-1/4"


def test_distinguish_command(capsys):
    doc = run_json(capsys, "distinguish", "--p", "5", "--q", "1", "--qprime", "3")
    assert doc["results"] == {"distinguishable": True, "matches": []}
    doc = run_json(capsys, "distinguish", "--p", "7", "--q", "3", "--qprime", "5")
    assert doc["results"]["distinguishable"] is False
    assert 9 in doc["results"]["matches"]


def test_components_command(capsys):
    doc = run_json(capsys, "components", "--p", "11")
    assert doc["results"]["count"] == 6
    assert doc["results"]["classes"] == [[1], [3, 15], [5, 9], [7, 19], [13, 17], [21]]


def test_swtot_default_scenario(capsys):
    doc = run_json(capsys, "swtot", "--scenario", "paper-default")
    assert doc["results"]["total"] == 1
    assert doc["results"]["crossings"] == {"0": 1}
    assert doc["results"]["stabilized"] is True


def test_orbit_command(capsys):
    doc = run_json(capsys, "orbit")
    assert doc["results"]["classification"] == "parabolic"
    assert doc["results"]["spinc_orbit"]["finite"] is False
    assert doc["results"]["crossing_index"] == 0


def test_metabolizer_command(capsys):
    doc = run_json(capsys, "metabolizer", "--bound", "1")
    assert doc["results"]["found"] is True
    assert doc["results"]["check"] is True
    assert len(doc["results"]["vectors"]) == 3
    assert all(doc["results"]["primitive"])


def test_dimension_command(capsys):
    doc = run_json(capsys, "dimension", "--c1-square", "-1", "--euler", "5", "--signature", "-1")
    assert doc["results"]["dimension"] == -2


def test_json_round_trip(capsys):
    code, out, _ = run_cli(capsys, "rho", "--order", "6", "--q", "1", "--s", "3")
    assert code == 0
    doc = json.loads(out)
    assert json.loads(json.dumps(doc)) == doc
    assert json.dumps(doc, indent=2, sort_keys=True) == out.strip()


def test_sweep_symmetric_with_matching_diagonal(capsys):
    doc = run_json(capsys, "sweep", "--p", "5")
    table = {(row["q"], row["qprime"]): row["matches"] for row in doc["results"]["table"]}
    qs = doc["results"]["q_values"]
    for q in qs:
        assert table[(q, q)], "diagonal must be all-matching"
        for qp in qs:
            assert bool(table[(q, qp)]) == bool(table[(qp, q)])
    assert doc["results"]["count"] == len(doc["results"]["classes"])


def test_sweep_parallel_matches_serial(capsys):
    serial = run_json(capsys, "sweep", "--p", "3")
    parallel = run_json(capsys, "sweep", "--p", "3", "--jobs", "2")
    assert serial["results"] == parallel["results"]


def test_exit_codes_parameter_errors(capsys):
    code, _, err = run_cli(capsys, "rho", "--order", "6", "--q", "2", "--s", "1")
    assert code == 2
    assert "coprime" in json.loads(err)["error"]["message"]
    code, _, _ = run_cli(capsys, "distinguish", "--p", "4", "--q", "1", "--qprime", "3")
    assert code == 2
    code, _, _ = run_cli(capsys, "eta", "--p", "4", "--q", "1", "--s", "0", "--formula", "odd-p")
    assert code == 2
    code, _, _ = run_cli(capsys, "dimension", "--c1-square", "0", "--euler", "5", "--signature", "-1")
    assert code == 2
    code, _, _ = run_cli(capsys, "swtot", "--scenario", "no-such-scenario")
    assert code == 2


def test_exit_code_genericity(capsys, tmp_path):
    doc = dict(load_scenario("paper-default").to_dict())
    doc["omega0"] = ["2/1", "1/1", "1/1"]  # on the wall
    path = tmp_path / "on_wall.json"
    path.write_text(json.dumps(doc))
    code, _, err = run_cli(capsys, "swtot", "--scenario", str(path))
    assert code == 3
    assert json.loads(err)["error"]["kind"] == "genericity"


def test_exit_code_resource(capsys):
    code, _, err = run_cli(capsys, "components", "--p", "51")
    assert code == 4
    assert json.loads(err)["error"]["kind"] == "resource"


def test_env_search_budget(capsys, monkeypatch):
    monkeypatch.setenv("LENSWALL_SEARCH_BUDGET", "1")
    code, _, err = run_cli(capsys, "metabolizer", "--bound", "1")
    assert code == 4
    assert json.loads(err)["error"]["kind"] == "resource"


def test_env_override_max_p(capsys, monkeypatch):
    monkeypatch.setenv("LENSWALL_MAX_P", "3")
    code, _, _ = run_cli(capsys, "eta", "--p", "5", "--q", "1", "--s", "1")
    assert code == 4
    monkeypatch.setenv("LENSWALL_MAX_P", "60")
    code, _, _ = run_cli(capsys, "eta", "--p", "51", "--q", "1", "--s", "1")
    assert code == 0
    monkeypatch.setenv("LENSWALL_MAX_P", "not-a-number")
    code, _, _ = run_cli(capsys, "eta", "--p", "3", "--q", "1", "--s", "1")
    assert code == 2


def test_scenario_file_round_trip(capsys, tmp_path):
    scenario = load_scenario("paper-default")
    path = tmp_path / "copy.json"
    path.write_text(json.dumps(scenario.to_dict()))
    doc = run_json(capsys, "swtot", "--scenario", str(path))
    assert doc["results"]["total"] == 1


def test_scenario_validation(tmp_path):
    base = load_scenario("paper-default").to_dict()
    bad = dict(base)
    bad["mystery"] = 1
    with pytest.raises(ParameterError, match="unknown scenario keys"):
        Scenario.from_dict(bad)
    bad = dict(base)
    del bad["sigma_plus"]
    with pytest.raises(ParameterError):
        Scenario.from_dict(bad)
    bad = dict(base)
    bad["isometry"] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    with pytest.raises(ParameterError, match="exactly one"):
        Scenario.from_dict(bad)
    bad = dict(base)
    bad["omega0"] = [0.5, 1, 1]
    with pytest.raises(ParameterError, match="rational"):
        Scenario.from_dict(bad)


def test_rational_helpers():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(7) == Fraction(7)
    assert format_rational(Fraction(-2, 6)) == "-1/3"
    assert format_rational(Fraction(5)) == "5/1"
    with pytest.raises(ParameterError):
        parse_rational(0.5)
    with pytest.raises(ParameterError):
        parse_rational("1/0")


def test_plot_disc(capsys, tmp_path):
    out = tmp_path / "disc.svg"
    doc = run_json(capsys, "plot-disc", "--out", str(out), "--orbit-steps", "4")
    svg = out.read_text()
    assert svg.startswith("<?xml")
    assert svg.count("<circle") >= 10  # unit circle plus nine orbit dots
    assert doc["results"]["crossing_index"] == 0
    # determinism: a second run is byte-identical
    out2 = tmp_path / "disc2.svg"
    run_json(capsys, "plot-disc", "--out", str(out2), "--orbit-steps", "4")
    assert out2.read_text() == svg


def test_plot_disc_stdout(capsys):
    code, out, _ = run_cli(capsys, "plot-disc", "--out", "-")
    assert code == 0
    assert out.startswith("<?xml") and out.rstrip().endswith("</svg>")


def test_cli_subprocess_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "lenswall", "dimension", "--c1-square", "-1",
         "--euler", "5", "--signature", "-1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["dimension"] == -2
