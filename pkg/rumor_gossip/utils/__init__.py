# rumor_gossip/utils/__init__.py
"""Utilities module."""
from .logger import logger, setup_logger
from .file_utils import (
    read_lines_file, write_text_file, write_json_file, write_csv, render_csv,
    ensure_directory, ensure_parent_directory
)
from .formatters import (
    format_float, format_percentage, format_value, format_key_values, format_records, format_counts
)
from .validators import (
    is_int, is_finite_number, require_int, require_number, validate_node_ids, validate_seed_counts
)
from .seeding import experiment_key, substream

__all__ = [
    "logger", "setup_logger",
    "read_lines_file", "write_text_file", "write_json_file", "write_csv", "render_csv",
    "ensure_directory", "ensure_parent_directory",
    "format_float", "format_percentage", "format_value", "format_key_values", "format_records",
    "format_counts",
    "is_int", "is_finite_number", "require_int", "require_number", "validate_node_ids",
    "validate_seed_counts",
    "experiment_key", "substream",
]
