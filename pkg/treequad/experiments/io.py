"""
Reading and writing run records and config echoes.
"""

import csv
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

from ..errors import ConfigError
from .config import ExperimentConfig, RunRecord

RUN_COLUMNS = list(RunRecord.model_fields)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


def write_runs_csv(records: Iterable[RunRecord], path: Path) -> Path:
    """One row per run; floats keep full precision so reruns compare byte for byte."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(RUN_COLUMNS)
        for record in records:
            writer.writerow([_cell(getattr(record, column)) for column in RUN_COLUMNS])
    return path


def read_runs_csv(path: Path) -> List[RunRecord]:
    """
    Parse a runs.csv written by ``write_runs_csv``.

    Raises:
        ConfigError: the file is missing or lacks required columns
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"runs file {path} does not exist")
    with path.open(newline="") as handle:
        reader = csv.DictReader(handle)
        missing = {"problem", "method", "dim", "replicate"} - set(reader.fieldnames or [])
        if missing:
            raise ConfigError(f"runs file {path} lacks columns {sorted(missing)}")
        rows: List[Dict[str, Optional[str]]] = [
            {key: (value if value != "" else None) for key, value in row.items()}
            for row in reader
        ]
    return [
        RunRecord.model_validate({k: v for k, v in row.items() if v is not None}) for row in rows
    ]


def write_config_json(config: ExperimentConfig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(config.echo(), indent=2, sort_keys=True) + "\n")
    return path


def write_rows_csv(header: List[str], rows: Iterable[Iterable[Any]], path: Path) -> Path:
    """Plain CSV writer shared by the summary, figure and diagnostic outputs."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(value) for value in row])
    return path
