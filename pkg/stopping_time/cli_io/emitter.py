"""
This module writes the datasets behind the figures and tables as record files.

Every file has a fixed column schema. Unbounded integers are written as decimal
strings, residues with a configurable number of decimal places. Implementations
of 'RecordWriter' are registered under the format name they produce, so the
output format is selected by configuration:

    csv     UTF-8, header row, comma separated
    jsonl   UTF-8, one JSON object per line, keys as in the CSV header
"""

__all__ = [
    'CURVE_COLUMNS',
    'CsvRecordWriter',
    'EmitterConfig',
    'EmitterError',
    'HISTOGRAM_COLUMNS',
    'JsonlRecordWriter',
    'RecordWriter',
    'SCATTER_COLUMNS',
    'SIEVE_COLUMNS',
    'TRAJECTORY_COLUMNS',
    'write_records',
]
__version__ = '0.1.0'


import csv
import io
import json
import logging
import os
from abc import abstractmethod
from typing import Annotated, Iterable, NamedTuple, Optional, Sequence

import aiofiles

from utils.registering_abc import RegisteringABC


HISTOGRAM_COLUMNS = ('bin_lo', 'bin_hi', 'count')
SCATTER_COLUMNS = ('n', 's')
CURVE_COLUMNS = ('n', 's_pred', 'alpha')
TRAJECTORY_COLUMNS = ('step', 'term', 's', 'alpha')
SIEVE_COLUMNS = ('n', 'window_lo', 'window_hi', 'allowed', 'prohibited')


class EmitterConfig(NamedTuple):
    """
    A simple configuration class for the record writers.
    """

    format: Annotated[str, "output format, one of 'csv' or 'jsonl'"] = 'csv'
    output_path: Annotated[str, "directory the record files are written to"] = 'output'
    precision: Annotated[int, "decimal places of residues"] = 12


class EmitterError(RuntimeError):
    """
    An exception of this type is raised if a record file cannot be written,
    either because the format is unknown or the output path is unusable.
    """

    def __init__(self, message: str, inner_exception: Optional[Exception] = None) -> None:
        if inner_exception is not None:
            message = f"{message}: {inner_exception}"
        super().__init__(message)
        self.inner_exception = inner_exception


class RecordWriter(RegisteringABC):
    """
    The abstract base class of the record writers. A writer renders a header
    and rows of plain values (int, float, str) into the text of one file.
    """

    def __init__(self, columns: Sequence[str]) -> None:
        self._columns = tuple(columns)

    @property
    def columns(self) -> Sequence[str]:
        """
        Returns the column names.
        """
        return self._columns

    @property
    @abstractmethod
    def extension(self) -> str:
        """
        Returns the file extension, without dot.
        """
        raise NotImplementedError

    @abstractmethod
    def render(self, rows: Iterable[Sequence]) -> str:
        """
        Renders the header (if any) and all rows.

        Parameters
        ----------
            rows : Iterable[Sequence]
                The rows, each with one value per column.

        Returns
        -------
            str
                The file content.
        """
        raise NotImplementedError

    def _check(self, row: Sequence) -> None:
        if len(row) != len(self._columns):
            raise ValueError(f"Row {row!r} does not match the columns {self._columns}")


class CsvRecordWriter(RecordWriter):
    """
    Writes comma separated values with a header row.
    """

    @property
    def extension(self) -> str:
        return 'csv'

    def render(self, rows: Iterable[Sequence]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(self.columns)
        for row in rows:
            self._check(row)
            writer.writerow(row)
        return buffer.getvalue()


CsvRecordWriter.register_implementation('csv')


class JsonlRecordWriter(RecordWriter):
    """
    Writes one JSON object per row.
    """

    @property
    def extension(self) -> str:
        return 'jsonl'

    def render(self, rows: Iterable[Sequence]) -> str:
        lines = []
        for row in rows:
            self._check(row)
            lines.append(json.dumps(dict(zip(self.columns, row)), ensure_ascii=False) + '\n')
        return ''.join(lines)


JsonlRecordWriter.register_implementation('jsonl')


async def write_records(config: EmitterConfig,
                        name: str,
                        columns: Sequence[str],
                        rows: Iterable[Sequence]) -> str:
    """
    Writes a record file '<output_path>/<name>.<extension>'.

    Parameters
    ----------
        config : EmitterConfig
            The output format and directory.
        name : str
            The file name without extension.
        columns : Sequence[str]
            The column schema.
        rows : Iterable[Sequence]
            The rows; integers should already be decimal strings where they
            may be unbounded.

    Returns
    -------
        str
            The path of the written file.

    Raises
    ------
        EmitterError
            If the format is unknown or the file cannot be written.
    """
    try:
        writer = RecordWriter.create_instance(config.format, columns)
    except ValueError as e:
        raise EmitterError(f"Unknown output format '{config.format}'", e) from e

    path = os.path.join(config.output_path, f"{name}.{writer.extension}")
    content = writer.render(rows)
    try:
        os.makedirs(config.output_path, exist_ok=True)
        async with aiofiles.open(path, 'w', encoding='utf-8', newline='') as file:
            await file.write(content)
    except OSError as e:
        raise EmitterError(f"Cannot write '{path}'", e) from e
    logging.info("Wrote %s", path)
    return path
