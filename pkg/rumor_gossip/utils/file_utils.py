# rumor_gossip/utils/file_utils.py
"""File operation utilities."""
import csv
import io
import json
import os
from typing import Any, Dict, Iterable, List, Sequence

from ..exceptions import DataFileError
from ..utils.logger import logger


def read_lines_file(file_path: str) -> List[str]:
    """Read a file and return its raw lines (newlines stripped)."""
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            return [line.rstrip('\n') for line in f]
    except OSError as e:
        raise DataFileError(f"Cannot read {file_path}: {e}")


def write_text_file(file_path: str, content: str) -> None:
    """Write content to a text file."""
    ensure_parent_directory(file_path)
    try:
        with open(file_path, 'w', encoding='utf-8', newline='') as f:
            f.write(content)
    except OSError as e:
        raise DataFileError(f"Cannot write {file_path}: {e}")
    logger.info(f"💾 Written to {file_path}")


def write_json_file(file_path: str, data: Dict[str, Any]) -> None:
    """Write data to a JSON file."""
    write_text_file(file_path, json.dumps(data, indent=2, sort_keys=False) + "\n")


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render rows as comma-separated text with a header row."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    return buffer.getvalue()


def write_csv(file_path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Write rows to a CSV file; the header row is always present."""
    write_text_file(file_path, render_csv(header, rows))


def ensure_parent_directory(file_path: str) -> None:
    """Ensure the directory holding file_path exists."""
    parent = os.path.dirname(os.path.abspath(file_path))
    ensure_directory(parent)


def ensure_directory(dir_path: str) -> None:
    """Ensure a directory exists, create if it doesn't."""
    try:
        os.makedirs(dir_path, exist_ok=True)
    except OSError as e:
        raise DataFileError(f"Cannot create directory {dir_path}: {e}")


def _cell(value: Any) -> Any:
    # repr() keeps floats round-trippable and byte-stable
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, float):
        return repr(float(value))
    if hasattr(value, 'item'):
        return _cell(value.item())
    return value
