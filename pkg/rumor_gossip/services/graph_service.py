"""Graph construction, neighbor sampling, connectivity and betweenness."""
from collections import deque
from typing import Iterable, Optional, Set, Tuple

import numpy as np

from ..exceptions import InvalidEdgeError, InvalidSizeError, NoNeighborError
from ..models.graph import CentralityScores, Graph
from ..utils.file_utils import read_lines_file
from ..utils.logger import logger
from ..utils.validators import is_int


def complete_graph(n: int) -> Graph:
    """Complete graph K_n; every distinct pair is an edge."""
    if not is_int(n) or n < 2:
        raise InvalidSizeError(f"A complete graph needs n >= 2, got {n!r}")
    return Graph(n=int(n), complete=True)


def from_edge_list(n: int, edges: Iterable[Tuple[int, int]]) -> Graph:
    """Undirected graph from unordered pairs; duplicates collapse."""
    if not is_int(n) or n < 1:
        raise InvalidSizeError(f"A graph needs n >= 1, got {n!r}")
    neighbor_sets = [set() for _ in range(n)]
    for edge in edges:
        u, v = _check_edge(edge, n)
        neighbor_sets[u].add(v)
        neighbor_sets[v].add(u)
    adjacency = tuple(tuple(sorted(nbrs)) for nbrs in neighbor_sets)
    if n >= 2 and all(len(nbrs) == n - 1 for nbrs in adjacency):
        return Graph(n=n, complete=True, explicit_adjacency=adjacency)
    return Graph(n=n, complete=False, explicit_adjacency=adjacency)


def _check_edge(edge: Tuple[int, int], n: int) -> Tuple[int, int]:
    try:
        u, v = edge
    except (TypeError, ValueError):
        raise InvalidEdgeError(f"Edge {edge!r} is not a pair of node ids")
    if not (is_int(u) and is_int(v)) or not (0 <= u < n and 0 <= v < n):
        raise InvalidEdgeError(f"Edge ({u!r}, {v!r}) has an endpoint outside [0, {n})")
    if u == v:
        raise InvalidEdgeError(f"Self-loop on node {u} is not allowed")
    return int(u), int(v)


def read_edge_list(file_path: str, n: Optional[int] = None) -> Graph:
    """Load a graph from "u v" lines; '#' lines and blank lines are skipped."""
    edges = []
    for line_no, line in enumerate(read_lines_file(file_path), start=1):
        text = line.strip()
        if not text or text.startswith('#'):
            continue
        parts = text.split()
        if len(parts) != 2:
            raise InvalidEdgeError(f"{file_path}:{line_no}: expected 'u v', got {text!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise InvalidEdgeError(f"{file_path}:{line_no}: node ids must be decimal integers, got {text!r}")
    if n is None:
        n = 1 + max((max(u, v) for u, v in edges), default=-1)
    graph = from_edge_list(n, edges)
    logger.info(f"📁 Loaded graph with {graph.n} nodes and {graph.edge_count} edges from {file_path}")
    return graph


def adjacency_matrix(g: Graph) -> np.ndarray:
    """Dense 0/1 adjacency matrix."""
    if g.complete:
        return np.ones((g.n, g.n)) - np.eye(g.n)
    matrix = np.zeros((g.n, g.n))
    indptr, indices = g.csr()
    rows = np.repeat(np.arange(g.n), np.diff(indptr))
    matrix[rows, indices] = 1.0
    return matrix


def sample_neighbor(g: Graph, i: int, rng: np.random.Generator) -> int:
    """A neighbor of i, each with probability 1/n_i."""
    degree = g.degree(i)
    if degree == 0:
        raise NoNeighborError(f"Node {i} has no neighbors")
    return g.neighbor_at(i, int(rng.integers(degree)))


def is_connected(g: Graph) -> bool:
    """True iff a traversal from node 0 reaches every node."""
    if g.complete or g.n <= 1:
        return True
    seen: Set[int] = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.n


def betweenness_centrality(g: Graph) -> CentralityScores:
    """Brandes' accumulation over unordered pairs (each pair counted once)."""
    n = g.n
    if g.complete:
        # no shortest path of a complete graph has an interior node
        return CentralityScores.from_raw(np.zeros(n))

    adjacency = g.adjacency
    scores = np.zeros(n)
    for source in range(n):
        stack = []
        predecessors = [[] for _ in range(n)]
        sigma = [0] * n
        sigma[source] = 1
        dist = [-1] * n
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adjacency[v]:
                if dist[w] < 0:
                    queue.append(w)
                    dist[w] = dist[v] + 1
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    predecessors[w].append(v)

        # stack pops in order of non-increasing distance from source
        dependency = [0.0] * n
        while stack:
            w = stack.pop()
            for v in predecessors[w]:
                dependency[v] += (sigma[v] / sigma[w]) * (1.0 + dependency[w])
            if w != source:
                scores[w] += dependency[w]

    # every unordered pair was visited from both ends
    return CentralityScores.from_raw(scores / 2.0)
