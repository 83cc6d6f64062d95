import math

import pandas as pd

from src.growth.growth_analyzer import GrowthSeries
from src.growth.reports import CSV_COLUMNS, dumps_report, series_frame, write_report_json, write_series_csv


def test_series_csv(tmp_path):
    series = GrowthSeries.from_values([1.0, 2.0, 4.0], label="doubling")
    path = write_series_csv(series, tmp_path / "nested" / "series.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "n,value,log_value"
    assert len(lines) == 4
    frame = pd.read_csv(path)
    assert list(frame.columns) == CSV_COLUMNS
    assert frame["n"].tolist() == [0, 1, 2]
    assert abs(frame["log_value"].iloc[2] - math.log(4.0)) < 1e-10


def test_huge_values_become_infinite():
    series = GrowthSeries.from_logs([1.0, 800.0])
    assert series_frame(series)["value"].iloc[1] == math.inf


def test_json_is_deterministic(tmp_path):
    report = {'b': 1, 'a': float('inf'), 'nested': {2: (1, 2)}}
    text = dumps_report(report)
    assert text == dumps_report(dict(reversed(list(report.items()))))
    assert text.startswith('{\n  "a": "inf",\n  "b": 1,')
    path = write_report_json(report, tmp_path / "report.json")
    assert path.read_text(encoding="utf-8") == text
