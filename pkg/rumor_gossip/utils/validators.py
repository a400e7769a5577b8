"""
Validation utilities for simulation parameters.
"""
import math
from numbers import Integral, Real
from typing import Any, Iterable, List, Type

from ..exceptions import GossipError, InvalidInputError


def is_int(value: Any) -> bool:
    """True for integers (bools excluded)."""
    return isinstance(value, Integral) and not isinstance(value, bool)


def is_finite_number(value: Any) -> bool:
    """True for finite real numbers."""
    return isinstance(value, Real) and not isinstance(value, bool) and math.isfinite(value)


def require_int(value: Any, name: str, minimum: int = 1,
                error: Type[GossipError] = InvalidInputError) -> int:
    """Return value as int or raise when it is not an integer >= minimum."""
    if not is_int(value) or value < minimum:
        raise error(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def require_number(value: Any, name: str, minimum: float = None, maximum: float = None,
                   strict_minimum: bool = False,
                   error: Type[GossipError] = InvalidInputError) -> float:
    """Return value as float or raise when it is not finite or out of range."""
    if not is_finite_number(value):
        raise error(f"{name} must be a finite number, got {value!r}")
    value = float(value)
    if minimum is not None:
        if (strict_minimum and value <= minimum) or (not strict_minimum and value < minimum):
            relation = ">" if strict_minimum else ">="
            raise error(f"{name} must be {relation} {minimum}, got {value!r}")
    if maximum is not None and value > maximum:
        raise error(f"{name} must be <= {maximum}, got {value!r}")
    return value


def validate_node_ids(nodes: Iterable[Any], n: int) -> List[str]:
    """Validate that every id is an integer node of a graph with n nodes."""
    errors = []
    for node in nodes:
        if not is_int(node):
            errors.append(f"Node id {node!r} is not an integer")
        elif not 0 <= node < n:
            errors.append(f"Node id {node} outside [0, {n})")
    return errors


def validate_seed_counts(n: int, n1: int, n2: int) -> List[str]:
    """Validate initial holder counts against the node count."""
    errors = []
    if n1 < 0 or n2 < 0:
        errors.append("Seed counts must be non-negative")
    if n1 + n2 > n:
        errors.append(f"Seed counts {n1}+{n2} exceed node count {n}")
    return errors
