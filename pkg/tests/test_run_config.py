import json
from fractions import Fraction
from pathlib import Path

import pytest

from src.config.run_config import load_run_config, parse_charge_list, parse_rational, parse_run_config
from src.geometry.charge_geometry import Charge
from src.utils.errors import ConfigValidationError

FLOAT_CHARGE_CONFIG = """{
  "quiver": "A2",
  "charges": [[0.5, 1], [-1, 1]]
}
"""


def test_float_charge_reports_line():
    with pytest.raises(ConfigValidationError) as excinfo:
        parse_run_config(FLOAT_CHARGE_CONFIG)
    assert excinfo.value.line == 3
    assert str(excinfo.value).startswith("line 3: charges")


def test_parse_rational():
    assert parse_rational(3) == Fraction(3)
    assert parse_rational([1, 2]) == Fraction(1, 2)
    for bad in (0.5, True, [1, 0], [1, 2, 3], "1/2"):
        with pytest.raises(ValueError):
            parse_rational(bad)
    assert parse_charge_list([[[1, 2], 1]]) == [(Fraction(1, 2), Fraction(1))]
    with pytest.raises(ValueError):
        parse_charge_list([])


def test_exact_charges_build_condition():
    config = parse_run_config(json.dumps({
        "quiver": "A2",
        "charges": [[[-1, 2], 1], [0, 1]],
        "extra_charges": [[[1, 1], [0, 1]]],
    }))
    sigma = config.stability_condition()
    assert sigma.charge.z[0] == Charge(Fraction(-1, 2), 1)
    assert [s.name for s in config.stability_conditions()] == ["config", "extra-1"]


def test_defaults():
    config = parse_run_config('{"quiver": "K3"}')
    assert config.n == 2
    assert config.quiver.arrow_count(0, 1) == 3
    assert config.cy_dimension == 3
    assert config.field == 2
    assert config.t_grid == [-1.0, 0.0, 1.0]
    assert config.stability_condition().name == "sigma0"
    assert config.output_directory() == Path("output")
    assert config.output_directory("elsewhere") == Path("elsewhere")
    assert config.output.json_report == "report.json"
    with pytest.raises(ConfigValidationError):
        config.twist_word()
    with pytest.raises(ConfigValidationError):
        config.build_representation()


@pytest.mark.parametrize("quiver", [
    {"vertices": 3, "arrows": [[1, 2], [2, 3]]},
    [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
    "A3",
])
def test_quiver_forms_agree(quiver):
    config = parse_run_config(json.dumps({"quiver": quiver}))
    assert config.quiver.q == ((0, 1, 0), (0, 0, 1), (0, 0, 0))


@pytest.mark.parametrize("data, field", [
    ({"quiver": "B2"}, "quiver"),
    ({"quiver": [[0, 1], [1, 0]]}, "quiver"),
    ({"quiver": {"vertices": 2, "arrows": [[1, 3]]}}, "quiver"),
    ({"quiver": "A2", "cy_dimension": 2}, "cy_dimension"),
    ({"quiver": "A2", "field": 4}, "field"),
    ({"quiver": "A2", "word": "T3"}, "word"),
    ({"quiver": "A2", "word": "R1"}, "word"),
    ({"quiver": "A2", "cap": 13}, "cap"),
    ({"quiver": "A2", "n_max": 4}, "n_max"),
    ({"quiver": "A2", "t_grid": []}, "t_grid"),
    ({"quiver": "A2", "charges": [[0, 1]]}, "charges"),
    ({"quiver": "A2", "charges": [[0, -1], [0, 1]]}, "charges"),
    ({"quiver": "A2", "unknown": 1}, "unknown"),
    ({"quiver": "A2", "representation": {"universal_extension": [2, 1]}}, "representation"),
    ({"quiver": "A2", "representation": {"dims": [1, 1, 1]}}, "representation"),
])
def test_invalid_configs(data, field):
    with pytest.raises(ConfigValidationError, match=field):
        parse_run_config(json.dumps(data))


def test_invalid_json_reports_line():
    with pytest.raises(ConfigValidationError) as excinfo:
        parse_run_config('{\n  "quiver": "A2"\n  "word": "T1"\n}')
    assert excinfo.value.line == 3
    with pytest.raises(ConfigValidationError, match="JSON object"):
        parse_run_config("[1]")


def test_representations_from_config():
    extension = parse_run_config(json.dumps({
        "quiver": "A2", "representation": {"universal_extension": [1, 2]},
    })).build_representation()
    assert extension.dims == (1, 1)

    inline = parse_run_config(json.dumps({
        "quiver": "A2", "field": 3, "representation": {"dims": [1, 1], "maps": [[[2]]]},
    })).build_representation()
    assert inline.p == 3
    assert inline.maps == (((2,),),)

    config = parse_run_config(json.dumps({
        "quiver": "A3", "representation": {"random": {"dims": [1, 2, 1], "seed": 5}},
    }))
    assert config.build_representation() == config.build_representation()


def test_overrides_apply_before_validation():
    config = parse_run_config('{"quiver": "A2", "n_max": 50}', {"n_max": 20, "seed": None})
    assert config.n_max == 20
    assert config.seed is None
    with pytest.raises(ConfigValidationError, match="n_max"):
        parse_run_config('{"quiver": "A2"}', {"n_max": 3})


def test_load_run_config(tmp_path):
    with pytest.raises(ConfigValidationError, match="not found"):
        load_run_config(tmp_path / "missing.json")
    path = tmp_path / "run.json"
    path.write_text('{"quiver": "A2", "word": "T1 T2\'"}', encoding="utf-8")
    assert str(load_run_config(path).twist_word()) == "T1 T2'"
