"""
CSV and JSON emission for growth series and reports
Output is deterministic: fixed column order, sorted keys, no timestamps.
"""
import json
import math
from pathlib import Path
from typing import Any, Dict, Union

import pandas as pd
from loguru import logger

from src.growth.growth_analyzer import GrowthSeries

CSV_COLUMNS = ["n", "value", "log_value"]


def series_frame(series: GrowthSeries) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "n": series.ns,
            "value": series.values,
            "log_value": series.log_values,
        },
        columns=CSV_COLUMNS,
    )


def write_series_csv(series: GrowthSeries, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    series_frame(series).to_csv(path, index=False, float_format="%.12g")
    logger.info(f"Series '{series.label}' ({len(series)} rows) saved to {path}")
    return path


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def dumps_report(report: Dict[str, Any]) -> str:
    return json.dumps(_json_safe(report), sort_keys=True, indent=2) + "\n"


def write_report_json(report: Dict[str, Any], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_report(report), encoding="utf-8")
    logger.info(f"Report saved to {path}")
    return path
