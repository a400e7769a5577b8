# rumor_gossip/models/spread.py
"""Rumor spreading data models."""
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple, Union

import numpy as np

Number = Union[int, float]


class NodeStatus(IntEnum):
    """The five node states of the two-message protocol."""
    SUSCEPTIBLE = 0
    M1_INFECTIVE = 1
    M2_INFECTIVE = 2
    M1_REMOVED = 3
    M2_REMOVED = 4

    @property
    def is_infective(self) -> bool:
        return self in (NodeStatus.M1_INFECTIVE, NodeStatus.M2_INFECTIVE)

    @property
    def is_removed(self) -> bool:
        return self in (NodeStatus.M1_REMOVED, NodeStatus.M2_REMOVED)

    @property
    def message(self) -> Optional[int]:
        """1 or 2 for informed nodes, None for susceptible ones."""
        if self == NodeStatus.SUSCEPTIBLE:
            return None
        return 1 if self in (NodeStatus.M1_INFECTIVE, NodeStatus.M1_REMOVED) else 2


class SpreadCounts(NamedTuple):
    """Aggregate counts (I1, I2, S, R1, R2); real-valued in expectation recursions."""
    i1: Number
    i2: Number
    s: Number
    r1: Number
    r2: Number

    @property
    def total(self) -> Number:
        return self.i1 + self.i2 + self.s + self.r1 + self.r2

    @property
    def infective(self) -> Number:
        return self.i1 + self.i2

    def fractions(self, n: int) -> 'SpreadCounts':
        return SpreadCounts(*(value / n for value in self))

    @classmethod
    def from_status(cls, status: np.ndarray) -> 'SpreadCounts':
        """Tally a per-node status array."""
        tally = np.bincount(status, minlength=5)
        return cls(i1=int(tally[NodeStatus.M1_INFECTIVE]), i2=int(tally[NodeStatus.M2_INFECTIVE]),
                   s=int(tally[NodeStatus.SUSCEPTIBLE]), r1=int(tally[NodeStatus.M1_REMOVED]),
                   r2=int(tally[NodeStatus.M2_REMOVED]))


@dataclass(eq=False)
class SpreadState:
    """Per-node spreading status plus the unnecessary-call counters C_i."""
    status: np.ndarray
    call_counter: np.ndarray
    threshold: int
    step: int = 0
    counts: SpreadCounts = None

    def __post_init__(self):
        if self.counts is None:
            self.counts = self.tally()

    @property
    def n(self) -> int:
        return int(self.status.shape[0])

    @property
    def is_absorbed(self) -> bool:
        return self.counts.infective == 0

    def tally(self) -> SpreadCounts:
        return SpreadCounts.from_status(self.status)

    def node_status(self, i: int) -> NodeStatus:
        return NodeStatus(int(self.status[i]))

    def copy(self) -> 'SpreadState':
        return SpreadState(status=self.status.copy(), call_counter=self.call_counter.copy(),
                           threshold=self.threshold, step=self.step, counts=self.counts)


@dataclass(frozen=True)
class TransitionProbs:
    """One-step probabilities of the aggregate chain."""
    p0: float
    p1_plus: float
    p1_minus: float
    p2_plus: float
    p2_minus: float

    @property
    def total(self) -> float:
        return self.p0 + self.p1_plus + self.p1_minus + self.p2_plus + self.p2_minus

    def as_tuple(self) -> Tuple[float, float, float, float, float]:
        return (self.p0, self.p1_plus, self.p1_minus, self.p2_plus, self.p2_minus)


@dataclass
class SpreadResult:
    """Outcome of one run; trajectory holds (step, counts) samples."""
    final: SpreadCounts
    steps: int
    absorbed: bool
    trajectory: List[Tuple[int, SpreadCounts]] = field(default_factory=list)

    @property
    def truncated(self) -> bool:
        return not self.absorbed

    @property
    def difference(self) -> int:
        """Final m1 holders minus final m2 holders."""
        return (self.final.i1 + self.final.r1) - (self.final.i2 + self.final.r2)


@dataclass(frozen=True)
class SeedConfig:
    """Initial holders, given as explicit node sets or as counts (n1, n2)."""
    seeds1: Optional[FrozenSet[int]] = None
    seeds2: Optional[FrozenSet[int]] = None
    n1: int = 0
    n2: int = 0

    @classmethod
    def from_counts(cls, n1: int, n2: int) -> 'SeedConfig':
        return cls(n1=n1, n2=n2)

    @classmethod
    def from_sets(cls, seeds1: Iterable[int], seeds2: Iterable[int]) -> 'SeedConfig':
        seeds1, seeds2 = frozenset(seeds1), frozenset(seeds2)
        return cls(seeds1=seeds1, seeds2=seeds2, n1=len(seeds1), n2=len(seeds2))

    def resolve(self) -> Tuple[FrozenSet[int], FrozenSet[int]]:
        """Explicit sets, or nodes 0..n1-1 for m1 and n1..n1+n2-1 for m2."""
        if self.seeds1 is not None or self.seeds2 is not None:
            return frozenset(self.seeds1 or ()), frozenset(self.seeds2 or ())
        return frozenset(range(self.n1)), frozenset(range(self.n1, self.n1 + self.n2))


OBSERVABLES = ("s_final", "r1_final", "r2_final", "difference", "abs_difference")


@dataclass
class SpreadSummary:
    """Monte Carlo means and sample variances of the final observables."""
    trials: int
    means: Dict[str, float]
    variances: Dict[str, float]
    truncated: int = 0

    def standard_error(self, observable: str) -> float:
        return float(np.sqrt(self.variances[observable] / self.trials))
