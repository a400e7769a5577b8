# rumor_gossip/models/applications.py
"""Voting game and word-of-mouth data models."""
from dataclasses import dataclass, field
from enum import Enum
from typing import List, NamedTuple

import numpy as np

from ..exceptions import InvalidInputError
from .consensus import CounterVector, TraceSample


class WomWeighting(Enum):
    NONE = "none"
    BETWEENNESS = "betweenness"


@dataclass(frozen=True)
class WomConfig:
    """Gaussian convincingness distribution and optional centrality weighting."""
    mu: float
    sigma: float
    weighting: WomWeighting = WomWeighting.NONE

    def __post_init__(self):
        if not self.sigma >= 0:
            raise InvalidInputError(f"sigma must be >= 0, got {self.sigma!r}")


@dataclass(eq=False)
class VotingState:
    """Agents' initial leanings, their counters and the observer-side payoff record."""
    preferences: np.ndarray
    counters: CounterVector
    payoff_history: List[np.ndarray] = field(default_factory=list)


class VotingTraceRow(NamedTuple):
    round: int
    camp1: int
    camp2: int
    undecided: int
    total_payoff: int


@dataclass(eq=False)
class VotingResult:
    state: VotingState
    trace: List[VotingTraceRow]
    final_choices: np.ndarray
    final_payoffs: np.ndarray

    @property
    def unanimous(self) -> bool:
        n = self.final_choices.shape[0]
        return self.trace[-1].total_payoff == n * n


class HistogramBin(NamedTuple):
    bin_left: float
    bin_right: float
    count: int


@dataclass(eq=False)
class WomResult:
    initial: CounterVector
    final: CounterVector
    histogram: List[HistogramBin]
    initial_mean: float
    final_value: float
    final_spread: float
    sign_consensus: bool
    trace: List[TraceSample] = field(default_factory=list)
