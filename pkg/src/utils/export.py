"""CSV and JSON writers for traces, sweep tables and run summaries."""

import csv
import logging
from collections.abc import Sequence
from pathlib import Path
from typing import TypeVar

from pydantic import BaseModel

from ..config import settings

logger = logging.getLogger(__name__)

Row = TypeVar("Row", bound=BaseModel)


def _format(value: object, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, f".{digits}g")
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


def export_csv(
    rows: Sequence[BaseModel],
    path: str | Path,
    columns: Sequence[str] | None = None,
    model: type[BaseModel] | None = None,
) -> Path:
    """
    Write rows as CSV: a header, floats with 17 significant digits, UNIX line endings.

    Args:
        rows: Records of one model type
        path: Output file; parent directories are created
        columns: Columns to write, in order; defaults to every model field
        model: Row type, needed to write a header for an empty row set

    Returns:
        The path written

    Raises:
        OSError: If the file cannot be written
    """
    path = Path(path)
    if columns is None:
        source = model or (type(rows[0]) if rows else None)
        columns = list(source.model_fields) if source is not None else []
    digits = settings.csv_float_digits

    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format(getattr(row, name), digits) for name in columns])

    logger.info(f"Wrote {len(rows)} rows to {path}")
    return path


def read_csv(path: str | Path, model: type[Row]) -> list[Row]:
    """Parse a CSV written by export_csv back into models; empty cells become None."""
    with Path(path).open(newline="") as handle:
        reader = csv.DictReader(handle)
        return [
            model.model_validate(
                {k: (v if v != "" else None) for k, v in record.items()}
            )
            for record in reader
        ]


def export_json(summary: BaseModel, path: str | Path) -> Path:
    """Write a model as indented JSON."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(summary.model_dump_json(indent=2) + "\n")
    logger.info(f"Wrote summary to {path}")
    return path
