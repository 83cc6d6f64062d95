import json

import pytest
from loguru import logger

from main import build_parser, main, parse_t_list
from src.utils.errors import ConfigValidationError


@pytest.fixture(autouse=True)
def drop_log_sinks():
    # main() binds a sink to the captured stderr of the current test
    yield
    logger.remove()


def write_config(tmp_path, **fields):
    data = {"quiver": "A2", "output": {"directory": str(tmp_path)}}
    data.update(fields)
    path = tmp_path / "run.json"
    path.write_text(json.dumps(data, indent=2), encoding="utf-8")
    return str(path)


def read_report(tmp_path, name="report.json"):
    return json.loads((tmp_path / name).read_text(encoding="utf-8"))


def test_parse_t_list():
    assert parse_t_list("-1,0,1") == [-1.0, 0.0, 1.0]
    assert parse_t_list(" 0.5 ") == [0.5]
    with pytest.raises(ConfigValidationError):
        parse_t_list("a,b")
    with pytest.raises(ConfigValidationError):
        parse_t_list(",")


def test_parser_accepts_negative_t_with_equals():
    args = build_parser().parse_args(["growth", "--config", "x.json", "--t=-1,0"])
    assert args.t_grid == "-1,0"
    assert args.suite is None


def test_unknown_command_is_usage_error():
    assert main(["frobnicate"]) == 2


def test_unknown_suite_is_usage_error(capsys):
    assert main(["check", "bogus"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_missing_config_is_usage_error(capsys):
    assert main(["hn"]) == 2
    assert "needs --config" in capsys.readouterr().err


def test_config_error_reports_line(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "quiver": "A2",\n  "charges": [[0.5, 1], [0, 1]]\n}\n', encoding="utf-8")
    assert main(["hn", "--config", str(path)]) == 2
    assert "line 3" in capsys.readouterr().err


def test_hn_command(tmp_path, capsys):
    config = write_config(tmp_path, charges=[[0, 1], [-1, 1]],
                          representation={"universal_extension": [1, 2]})
    assert main(["hn", "--config", config, "--svg"]) == 0
    report = read_report(tmp_path)
    assert report['hn']['factor_dims'] == [[0, 1], [1, 0]]
    assert report['hn']['phases'] == [0.75, 0.5]
    assert [row['t'] for row in report['masses']] == [-1.0, 0.0, 1.0]
    assert (tmp_path / "polygon.svg").exists()
    assert json.loads(capsys.readouterr().out) == report


def test_hn_of_zero_representation(tmp_path):
    config = write_config(tmp_path, representation={"dims": [0, 0]})
    assert main(["hn", "--config", config]) == 0
    assert all(row['mass'] == 0.0 for row in read_report(tmp_path)['masses'])


def test_mass_command(tmp_path):
    config = write_config(tmp_path, representation={"universal_extension": [1, 2]},
                          extra_charges=[[[0, 1], [-1, 1]]])
    assert main(["mass", "--config", config, "--t=0"]) == 0
    rows = read_report(tmp_path)['rows']
    assert [row['stability'] for row in rows] == ["sigma0", "extra-1"]
    assert rows[0]['mass'] == pytest.approx(2.0)
    assert rows[0]['delta_lower'] == pytest.approx(1.0)


def test_polygon_command(tmp_path):
    config = write_config(tmp_path, representation={"universal_extension": [1, 2]})
    assert main(["polygon", "--config", config]) == 0
    assert read_report(tmp_path)['agreement'] is True
    assert (tmp_path / "polygon.svg").read_text(encoding="utf-8").startswith("<svg")


@pytest.mark.parametrize("argv", [["polygon"], ["hn", "--svg"]])
def test_polygon_svg_shows_subobject_charges(tmp_path, argv):
    # S1 + S2: Z(S1) = i is a subobject charge off the extremal path
    config = write_config(tmp_path, charges=[[0, 1], [-1, 1]],
                          representation={"dims": [1, 1], "maps": [[[0]]]})
    assert main(argv + ["--config", config]) == 0
    svg = (tmp_path / "polygon.svg").read_text(encoding="utf-8")
    assert svg.count("<circle") == 4
    assert 'cx="0" cy="-1"' in svg
    assert 'fill="#404040"' in svg


def test_growth_single_twist(tmp_path):
    config = write_config(tmp_path, word="T1")
    assert main(["growth", "--config", config, "--t=-1", "--nmax", "16"]) == 0
    report = read_report(tmp_path)
    assert report['mode'] == "exact"
    assert report['rows'][0]['exact'] == 2.0
    assert report['rows'][0]['slope_regression'] == pytest.approx(2.0, abs=0.01)
    lines = (tmp_path / "series.csv").read_text().splitlines()
    assert lines[0] == "n,value,log_value"
    assert len(lines) == 18


def test_growth_general_word_is_bounds_only(tmp_path, capsys):
    config = write_config(tmp_path, word="T1 T2")
    assert main(["growth", "--config", config, "--t=0,1", "--nmax", "12"]) == 0
    assert "bounds-only" in capsys.readouterr().err
    report = read_report(tmp_path)
    assert report['mode'] == "bounds-only"
    assert report['rows'][0]['lower_log_rho'] == pytest.approx(0.0, abs=1e-9)
    assert (tmp_path / "series_t0.csv").exists()
    assert (tmp_path / "series_t1.csv").exists()


def test_spectral_command(tmp_path):
    config = write_config(tmp_path, quiver="K3", word="T1 T2")
    assert main(["spectral", "--config", config]) == 0
    report = read_report(tmp_path)
    assert report['k_matrix'] == [[-8, 3], [-3, 1]]
    assert report['characteristic_polynomial'] == [1, 7, 1]


def test_twist_orbit_command(tmp_path):
    config = write_config(tmp_path, word="T1")
    assert main(["twist-orbit", "--config", config, "--nmax", "8"]) == 0
    report = read_report(tmp_path)
    assert len(report['orbit']) == 9
    assert report['orbit'][1]['k_class'] == [2, 1]
    assert len(report['exact_profiles']) == 18


def test_growth_without_word_is_usage_error(tmp_path):
    config = write_config(tmp_path)
    assert main(["growth", "--config", config]) == 2
