# rumor_gossip/utils/formatters.py
"""Data formatting utilities."""
from typing import Any, Dict, Iterable, Tuple


def format_float(value: float) -> str:
    """Format a float so repeated runs print identical text."""
    return repr(float(value))


def format_percentage(value: float, decimal_places: int = 1) -> str:
    """Format a fraction as percentage."""
    if value is None:
        return ""
    return f"{value * 100:.{decimal_places}f}%"


def format_value(value: Any) -> str:
    """Format a summary value for a key=value line."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    if hasattr(value, 'item'):
        return format_value(value.item())
    return str(value)


def format_key_values(pairs: Iterable[Tuple[str, Any]]) -> str:
    """Format ordered (key, value) pairs as key=value lines."""
    return "\n".join(f"{key}={format_value(value)}" for key, value in pairs)


def format_records(records: Iterable["RunRecord"]) -> str:
    """Format run records as a key=value summary block."""
    return format_key_values((record.key, record.value) for record in records)


def format_counts(counts: Dict[str, int]) -> str:
    """Format a small tally for log lines, e.g. 'S=3 R1=5'."""
    return " ".join(f"{name}={count}" for name, count in counts.items())

