"""
Tabular output.

Field grids, integral mean tables and verification reports are handed
over as ``pandas.DataFrame`` objects and written either as CSV (17
significant digits, so every float parses back to the same double) or,
for paths ending in ``.xlsx``, as an Excel workbook through openpyxl.
Rows given as dictionaries keep the column order of the first row.
"""

from __future__ import annotations

import io
import logging
import sys
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, TextIO, Union

import pandas as pd

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
PathLike = Union[str, Path]


def rows_to_frame(rows: Iterable[Mapping[str, object]]) -> pd.DataFrame:
    """Build a frame whose columns follow the keys of the first row."""
    iterator = iter(rows)
    try:
        first_row = next(iterator)
    except StopIteration:
        return pd.DataFrame()
    columns: Sequence[str] = list(first_row.keys())
    return pd.DataFrame([first_row, *iterator], columns=columns)


def frame_to_excel(
    df: pd.DataFrame,
    output_path: Optional[PathLike] = None,
    sheet_name: str = "Sheet1",
) -> io.BytesIO:
    """Write ``df`` into an in-memory workbook, optionally persisting it.

    An empty frame still yields a valid workbook with one blank sheet.
    """
    output = io.BytesIO()
    with pd.ExcelWriter(output, engine="openpyxl") as writer:
        df.to_excel(writer, sheet_name=sheet_name, index=False)
    if output_path:
        path = Path(output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(output.getvalue())
    output.seek(0)
    return output


def write_frame(
    df: pd.DataFrame,
    output_path: Optional[PathLike] = None,
    sheet_name: str = "Sheet1",
    stream: Optional[TextIO] = None,
) -> None:
    """Write ``df`` to ``output_path`` (CSV or ``.xlsx``) or, without a
    path, as CSV to ``stream`` (standard output by default)."""
    if output_path is None or str(output_path) == "-":
        df.to_csv(stream or sys.stdout, index=False, float_format=FLOAT_FORMAT)
        return
    path = Path(output_path)
    if path.suffix.lower() == ".xlsx":
        frame_to_excel(df, path, sheet_name)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.debug("wrote %d rows to %s", len(df), path)
