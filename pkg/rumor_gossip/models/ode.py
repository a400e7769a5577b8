# rumor_gossip/models/ode.py
"""Deterministic model data types."""
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

import numpy as np

TWO_MESSAGE_COLUMNS = ("i1", "i2", "s", "r1", "r2")
REDUCED_COLUMNS = ("s", "i", "r")


@dataclass(frozen=True)
class OdeState:
    """Fractions of the five node classes at model time t."""
    i1: float
    i2: float
    s: float
    r1: float = 0.0
    r2: float = 0.0
    t: float = 0.0

    @property
    def total(self) -> float:
        return self.i1 + self.i2 + self.s + self.r1 + self.r2

    @property
    def i(self) -> float:
        return self.i1 + self.i2

    @property
    def r(self) -> float:
        return self.r1 + self.r2

    def as_array(self) -> np.ndarray:
        return np.array([self.i1, self.i2, self.s, self.r1, self.r2], dtype=float)

    @classmethod
    def from_array(cls, values: Sequence[float], t: float = 0.0) -> 'OdeState':
        i1, i2, s, r1, r2 = (float(v) for v in values)
        return cls(i1=i1, i2=i2, s=s, r1=r1, r2=r2, t=float(t))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Samples of a state vector on a fixed time grid."""
    columns: Tuple[str, ...]
    times: np.ndarray
    values: np.ndarray

    def __len__(self) -> int:
        return int(self.times.shape[0])

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.columns.index(name)]

    def state_at(self, index: int) -> OdeState:
        """Two-message trajectories only."""
        return OdeState.from_array(self.values[index], t=self.times[index])

    @property
    def final(self) -> np.ndarray:
        return self.values[-1]

    def rows(self) -> Iterator[Tuple[float, ...]]:
        """(t, *values) rows for CSV output."""
        for t, row in zip(self.times, self.values):
            yield (float(t),) + tuple(float(v) for v in row)

    @property
    def header(self) -> Tuple[str, ...]:
        return ("t",) + self.columns
