# rumor_gossip/models/consensus.py
"""Consensus data models."""
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Dict, List, NamedTuple, Optional, Sequence

import numpy as np


class Choice(IntEnum):
    """Decision tag of a node: g1 / g2 (the voting game's chi1 / chi2) or undecided."""
    UNDECIDED = 0
    G1 = 1
    G2 = 2


@dataclass(eq=False)
class CounterVector:
    """Real counters C_i(k); the average is fixed by the initial sum."""
    c: np.ndarray
    k: int = 0
    initial_sum: float = None

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        if self.initial_sum is None:
            self.initial_sum = float(self.c.sum())

    @classmethod
    def from_values(cls, values: Sequence[float]) -> 'CounterVector':
        return cls(c=np.array(values, dtype=float))

    @property
    def n(self) -> int:
        return int(self.c.shape[0])

    @property
    def c_ave(self) -> float:
        return self.initial_sum / self.n

    def deviation(self) -> np.ndarray:
        return self.c - self.c_ave

    def distance(self) -> float:
        """Euclidean norm of C(k) - c_ave * 1."""
        return float(np.linalg.norm(self.deviation()))

    def copy(self) -> 'CounterVector':
        return CounterVector(c=self.c.copy(), k=self.k, initial_sum=self.initial_sum)


@dataclass(eq=False)
class TwoCounterState:
    """Per node: held message tag, own-message counter C_i, other-message counter C'_i."""
    tags: np.ndarray
    own: np.ndarray
    other: np.ndarray
    k: int = 0

    @property
    def n(self) -> int:
        return int(self.tags.shape[0])

    def copy(self) -> 'TwoCounterState':
        return TwoCounterState(tags=self.tags.copy(), own=self.own.copy(), other=self.other.copy(), k=self.k)


@dataclass(frozen=True)
class SpectralReport:
    """Spectral quantities and sign-consensus step thresholds."""
    n: int
    n1: int
    n2: int
    lambda2: float
    epsilon: float
    k_star: float
    k_lower: float
    k_upper: float
    probability_floor: float

    def to_dict(self) -> Dict[str, float]:
        return {
            "n": self.n,
            "n1": self.n1,
            "n2": self.n2,
            "lambda2": self.lambda2,
            "epsilon": self.epsilon,
            "k_star": self.k_star,
            "k_lower": self.k_lower,
            "k_upper": self.k_upper,
            "probability_floor": self.probability_floor,
        }


class StopKind(Enum):
    BUDGET = "budget"
    SIGN_CONSENSUS = "sign"
    DISTANCE = "distance"


@dataclass(frozen=True)
class StopRule:
    """When run_consensus stops; the round budget always applies."""
    kind: StopKind
    budget: int
    threshold: Optional[float] = None


class TraceSample(NamedTuple):
    k: int
    distance: float
    sign_consensus: bool
    positive_count: int
    negative_count: int


@dataclass
class ConsensusTrace:
    """Sampled run of the averaging algorithm."""
    samples: List[TraceSample]
    rounds: int
    stop_reason: str
    truncated: bool
    final: CounterVector = field(repr=False, default=None)

    @property
    def last(self) -> TraceSample:
        return self.samples[-1]
