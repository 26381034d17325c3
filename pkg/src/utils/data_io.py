"""CSV/JSON codecs and atomic file output"""

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

from src.utils.errors import DataFormatError

PathLike = Union[str, Path]


class DataIO:
    """Utility class for reading and writing result files"""

    @staticmethod
    def format_float(value: float) -> str:
        """
        Format a float with 17 significant digits

        Args:
            value: Number to format

        Returns:
            Decimal string that round-trips exactly
        """
        return f"{float(value):.16e}"

    @staticmethod
    def write_text_atomic(path: PathLike, text: str) -> Path:
        """
        Write text to a file atomically (temp file in the same directory, then rename)

        Args:
            path: Destination path
            text: Full file contents; written with LF line endings

        Returns:
            Resolved destination path
        """
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", dir=str(target.parent))
        try:
            with os.fdopen(fd, 'w', encoding='utf-8', newline='\n') as f:
                f.write(text)
            os.replace(tmp_name, target)
        except BaseException:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise
        return target

    @staticmethod
    def csv_text(header: Sequence[str], rows: Sequence[Sequence[float]]) -> str:
        """
        Render a numeric table as CSV text

        Args:
            header: Column names
            rows: Rows of floats, one per sample

        Returns:
            CSV text with a header line and LF line endings
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([DataIO.format_float(v) for v in row])
        return buffer.getvalue()

    @staticmethod
    def parse_csv(text: str, header: Sequence[str]) -> Dict[str, List[float]]:
        """
        Parse numeric CSV text with an exact header

        Args:
            text: CSV contents
            header: Expected column names, in order

        Returns:
            Mapping of column name to its values

        Raises:
            DataFormatError: On a wrong header, wrong field count or non-numeric field
        """
        reader = csv.reader(io.StringIO(text))
        columns: Dict[str, List[float]] = {name: [] for name in header}
        seen_header = False

        for line_number, record in enumerate(reader, 1):
            if not record:
                continue
            if not seen_header:
                if [field.strip() for field in record] != list(header):
                    raise DataFormatError(
                        f"expected header {','.join(header)}, got {','.join(record)}",
                        line_number
                    )
                seen_header = True
                continue
            if len(record) != len(header):
                raise DataFormatError(
                    f"expected {len(header)} fields, got {len(record)}", line_number
                )
            for name, field in zip(header, record):
                try:
                    value = float(field)
                except ValueError:
                    raise DataFormatError(f"not a number: {field!r}", line_number) from None
                if not math.isfinite(value):
                    raise DataFormatError(f"non-finite value: {field!r}", line_number)
                columns[name].append(value)

        if not seen_header:
            raise DataFormatError("empty file", 1)
        return columns

    @staticmethod
    def read_csv(path: PathLike, header: Sequence[str]) -> Dict[str, List[float]]:
        """
        Read a numeric CSV file

        Args:
            path: Source file
            header: Expected column names

        Returns:
            Mapping of column name to its values
        """
        with open(path, 'r', encoding='utf-8', newline='') as f:
            return DataIO.parse_csv(f.read(), header)

    @staticmethod
    def json_text(payload: Dict[str, Any]) -> str:
        """
        Render a JSON object deterministically

        Args:
            payload: JSON-serializable mapping

        Returns:
            Indented JSON with a trailing newline
        """
        return json.dumps(payload, indent=2) + "\n"

    @staticmethod
    def write_json(path: PathLike, payload: Dict[str, Any]) -> Path:
        """
        Write a JSON object atomically

        Args:
            path: Destination path
            payload: JSON-serializable mapping

        Returns:
            Destination path
        """
        return DataIO.write_text_atomic(path, DataIO.json_text(payload))

    @staticmethod
    def read_json(path: PathLike) -> Any:
        """
        Read a JSON document

        Args:
            path: Source file

        Returns:
            Decoded document

        Raises:
            DataFormatError: If the file is not valid JSON
        """
        with open(path, 'r', encoding='utf-8') as f:
            try:
                return json.load(f)
            except json.JSONDecodeError as e:
                raise DataFormatError(e.msg, e.lineno) from None
