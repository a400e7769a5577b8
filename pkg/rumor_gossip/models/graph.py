# rumor_gossip/models/graph.py
"""Graph data models."""
from dataclasses import dataclass, field
from typing import Iterator, Optional, Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected graph over nodes 0..n-1.

    Complete graphs are stored implicitly: ``adjacency`` and the CSR arrays
    are only materialised on first use, and neighbor lookups are O(1).
    """
    n: int
    complete: bool = False
    explicit_adjacency: Optional[Tuple[Tuple[int, ...], ...]] = field(default=None, repr=False)
    _degrees: np.ndarray = field(init=False, repr=False)
    _csr: Optional[Tuple[np.ndarray, np.ndarray]] = field(init=False, default=None, repr=False)

    def __post_init__(self):
        if self.complete:
            degrees = np.full(self.n, self.n - 1, dtype=np.int64)
        else:
            degrees = np.array([len(nbrs) for nbrs in self.explicit_adjacency], dtype=np.int64)
        degrees.setflags(write=False)
        object.__setattr__(self, '_degrees', degrees)

    @property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        """Sorted neighbor tuple for every node."""
        if self.explicit_adjacency is None:
            nodes = range(self.n)
            object.__setattr__(self, 'explicit_adjacency',
                               tuple(tuple(j for j in nodes if j != i) for i in nodes))
        return self.explicit_adjacency

    @property
    def degrees(self) -> np.ndarray:
        """Neighbor count n_i per node (read-only)."""
        return self._degrees

    def degree(self, i: int) -> int:
        return int(self._degrees[i])

    def neighbors(self, i: int) -> Tuple[int, ...]:
        if self.complete and self.explicit_adjacency is None:
            return tuple(range(i)) + tuple(range(i + 1, self.n))
        return self.adjacency[i]

    def neighbor_at(self, i: int, offset: int) -> int:
        """The offset-th entry of the sorted neighbor list of i."""
        if self.complete:
            return offset if offset < i else offset + 1
        return self.adjacency[i][offset]

    def csr(self) -> Tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) arrays of the adjacency structure."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(self._degrees, out=indptr[1:])
            indices = np.fromiter((j for nbrs in self.adjacency for j in nbrs),
                                  dtype=np.int64, count=int(indptr[-1]))
            object.__setattr__(self, '_csr', (indptr, indices))
        return self._csr

    @property
    def edge_count(self) -> int:
        return int(self._degrees.sum()) // 2

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Each undirected edge once, as (u, v) with u < v."""
        for u in range(self.n):
            for v in self.neighbors(u):
                if u < v:
                    yield u, v

    def has_edge(self, u: int, v: int) -> bool:
        if self.complete:
            return u != v
        return v in self.adjacency[u]


@dataclass(frozen=True, eq=False)
class CentralityScores:
    """Betweenness scores, raw and scaled into [0, 1] by the maximum."""
    raw: np.ndarray
    normalized: np.ndarray

    @classmethod
    def from_raw(cls, raw: np.ndarray) -> 'CentralityScores':
        """Create scores from raw values; all-zero raw gives all-zero normalized."""
        raw = np.asarray(raw, dtype=float)
        peak = raw.max() if raw.size else 0.0
        normalized = raw / peak if peak > 0 else np.zeros_like(raw)
        return cls(raw=raw, normalized=normalized)
