# rumor_gossip/models/__init__.py
"""Data models for graphs, spreading, the deterministic model, consensus and applications."""
from .graph import Graph, CentralityScores
from .spread import (
    NodeStatus, SpreadCounts, SpreadState, TransitionProbs, SpreadResult, SeedConfig, SpreadSummary,
    OBSERVABLES
)
from .ode import OdeState, Trajectory, TWO_MESSAGE_COLUMNS, REDUCED_COLUMNS
from .consensus import (
    Choice, CounterVector, TwoCounterState, SpectralReport, StopKind, StopRule, TraceSample, ConsensusTrace
)
from .applications import (
    WomWeighting, WomConfig, VotingState, VotingTraceRow, VotingResult, HistogramBin, WomResult
)
from .experiment import ExperimentConfig, ExperimentOutput, RunRecord

__all__ = [
    "Graph", "CentralityScores",
    "NodeStatus", "SpreadCounts", "SpreadState", "TransitionProbs", "SpreadResult", "SeedConfig",
    "SpreadSummary", "OBSERVABLES",
    "OdeState", "Trajectory", "TWO_MESSAGE_COLUMNS", "REDUCED_COLUMNS",
    "Choice", "CounterVector", "TwoCounterState", "SpectralReport", "StopKind", "StopRule", "TraceSample",
    "ConsensusTrace",
    "WomWeighting", "WomConfig", "VotingState", "VotingTraceRow", "VotingResult", "HistogramBin", "WomResult",
    "ExperimentConfig", "ExperimentOutput", "RunRecord",
]
