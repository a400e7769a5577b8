"""
Custom exceptions for the rumor gossip simulator.
"""
from typing import Any, Dict, Optional


class GossipError(Exception):
    """Base exception for simulator errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class GraphError(GossipError):
    """Raised when a graph cannot be built or used."""
    pass


class InvalidSizeError(GraphError):
    """Raised when a node count is too small."""
    pass


class InvalidEdgeError(GraphError):
    """Raised when an edge has an out-of-range endpoint or is a self-loop."""
    pass


class NoNeighborError(GraphError):
    """Raised when sampling a neighbor of an isolated node."""
    pass


class ConnectivityError(GraphError):
    """Raised when an operation needs a connected graph."""
    pass


class SeedConflictError(GossipError):
    """Raised when a node is seeded with both messages."""
    pass


class InvalidThresholdError(GossipError):
    """Raised when the removal threshold l is below 1."""
    pass


class InconsistentStateError(GossipError):
    """Raised when aggregate counts do not add up to the node count."""
    pass


class OracleScaleError(GossipError):
    """Raised when the exact absorption oracle is asked for too many nodes."""
    pass


class InvalidInputError(GossipError):
    """Raised when a numeric argument is outside its valid range."""
    pass


class DomainError(InvalidInputError):
    """Raised when a closed-form function is evaluated outside its domain."""
    pass


class DegenerateSplitError(InvalidInputError):
    """Raised when a proportional split has no initial mass."""
    pass


class InvalidPairError(InvalidInputError):
    """Raised when an update pair names the same node twice."""
    pass


class DegenerateTieError(InvalidInputError):
    """Raised when n1 == n2 makes the sign-consensus bounds vacuous."""
    pass


class IterationLimitError(GossipError):
    """Raised when power iteration does not converge."""
    pass


class ConfigurationError(GossipError):
    """Raised when configuration is invalid."""
    pass


class UsageError(GossipError):
    """Raised when command-line parameters are inconsistent."""
    pass


class DataFileError(GossipError):
    """Raised when an input or output file cannot be used."""
    pass
