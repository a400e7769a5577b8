"""Averaging consensus: pairwise gossip, two-counter variant, update matrices and spectral bounds."""
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config.settings import config
from ..exceptions import (
    ConnectivityError, DegenerateTieError, DomainError, InvalidInputError, InvalidPairError, IterationLimitError,
    NoNeighborError
)
from ..models.consensus import (
    Choice, ConsensusTrace, CounterVector, SpectralReport, StopKind, StopRule, TraceSample, TwoCounterState
)
from ..models.graph import Graph
from ..utils.logger import logger
from .graph_service import adjacency_matrix, is_connected, sample_neighbor

_BATCH = 4096
# relative slack under which the running squared distance is resynced
_DISTANCE_MARGIN = 1e-6

Pairs = Tuple[np.ndarray, np.ndarray]


def _tags(assignments: Sequence[int]) -> np.ndarray:
    tags = np.asarray(assignments, dtype=np.int64)
    if tags.ndim != 1 or tags.size == 0:
        raise InvalidInputError("Assignments must be a non-empty sequence of message tags")
    if not np.all((tags == Choice.G1) | (tags == Choice.G2)):
        raise InvalidInputError("Every node must hold g1 or g2")
    return tags.astype(np.int8)


def binary_assignments(n1: int, n2: int) -> np.ndarray:
    """Nodes 0..n1-1 hold g1, the next n2 nodes hold g2."""
    if n1 < 0 or n2 < 0 or n1 + n2 == 0:
        raise InvalidInputError(f"Need non-negative holder counts with n1 + n2 > 0, got ({n1}, {n2})")
    return np.concatenate([np.full(n1, Choice.G1, dtype=np.int8), np.full(n2, Choice.G2, dtype=np.int8)])


def init_counters_binary(assignments: Sequence[int]) -> CounterVector:
    """+1 for g1 holders, -1 for g2 holders."""
    tags = _tags(assignments)
    return CounterVector(c=np.where(tags == Choice.G1, 1.0, -1.0))


def average_pair(cv: CounterVector, i: int, j: int) -> CounterVector:
    """Replace C_i and C_j by their mean, in place."""
    if i == j:
        raise InvalidPairError(f"A node cannot average with itself (i = j = {i})")
    mean = 0.5 * (cv.c[i] + cv.c[j])
    cv.c[i] = mean
    cv.c[j] = mean
    cv.k += 1
    return cv


def gossip_round(cv: CounterVector, g: Graph, rng: np.random.Generator) -> Tuple[CounterVector, Tuple[int, int]]:
    """Activate i uniformly, let it average with a uniform neighbor j."""
    i = int(rng.integers(g.n))
    j = sample_neighbor(g, i, rng)
    return average_pair(cv, i, j), (i, j)


def draw_pairs(g: Graph, rng: np.random.Generator, count: int) -> Pairs:
    """count ordered activations at once: i uniform over nodes, j uniform over N_i."""
    n = g.n
    i = rng.integers(0, n, size=count)
    if g.complete:
        offset = rng.integers(0, n - 1, size=count)
        return i, offset + (offset >= i)
    indptr, indices = g.csr()
    degrees = np.diff(indptr)[i]
    if np.any(degrees == 0):
        raise NoNeighborError(f"Node {int(i[np.argmax(degrees == 0)])} has no neighbors")
    offset = np.minimum((rng.random(count) * degrees).astype(np.int64), degrees - 1)
    return i, indices[indptr[i] + offset]


def apply_pairs(cv: CounterVector, i: Sequence[int], j: Sequence[int]) -> CounterVector:
    """Replay a pair sequence on cv in place."""
    i, j = np.asarray(i).tolist(), np.asarray(j).tolist()
    values = cv.c.tolist()
    for a, b in zip(i, j):
        mean = 0.5 * (values[a] + values[b])
        values[a] = mean
        values[b] = mean
    cv.c[:] = values
    cv.k += len(i)
    return cv


def replay_matrix(n: int, i: Sequence[int], j: Sequence[int]) -> np.ndarray:
    """Product of the realized update matrices, so that C(k) = P @ C(0)."""
    product = np.eye(n)
    for a, b in zip(np.asarray(i).tolist(), np.asarray(j).tolist()):
        rows = 0.5 * (product[a] + product[b])
        product[a] = rows
        product[b] = rows
    return product


def decision(cv: CounterVector) -> np.ndarray:
    """Per-node Choice from the sign of its counter; zero stays undecided."""
    return np.where(cv.c > 0, Choice.G1, np.where(cv.c < 0, Choice.G2, Choice.UNDECIDED)).astype(np.int8)


def has_sign_consensus(cv: CounterVector) -> bool:
    """All counters nonzero and of one sign."""
    return bool(np.all(cv.c > 0) or np.all(cv.c < 0))


def majority(choices: Sequence[int]) -> Choice:
    """The more frequent of g1 / g2; undecided on a tie."""
    choices = np.asarray(choices)
    g1 = int(np.count_nonzero(choices == Choice.G1))
    g2 = int(np.count_nonzero(choices == Choice.G2))
    if g1 == g2:
        return Choice.UNDECIDED
    return Choice.G1 if g1 > g2 else Choice.G2


def init_two_counter(assignments: Sequence[int]) -> TwoCounterState:
    """Each node starts with one vote for its own message and none for the other."""
    tags = _tags(assignments)
    return TwoCounterState(tags=tags, own=np.ones(tags.size), other=np.zeros(tags.size))


def _exchange(tags: list, own: list, other: list, i: int, j: int) -> None:
    own_i, own_j = own[i], own[j]
    if tags[i] == tags[j]:
        own[i] = own[j] = own_i + own_j
    else:
        # both other-message counters become C'_i + C_j, not symmetric in i and j
        merged = other[i] + own_j
        other[i] = other[j] = merged


def two_counter_round(state: TwoCounterState, g: Graph, rng: np.random.Generator) -> TwoCounterState:
    """One activation of the two-counter scheme, in place."""
    i = int(rng.integers(g.n))
    j = sample_neighbor(g, i, rng)
    own, other = state.own.tolist(), state.other.tolist()
    _exchange(state.tags.tolist(), own, other, i, j)
    state.own[:] = own
    state.other[:] = other
    state.k += 1
    return state


def run_two_counter(state: TwoCounterState, g: Graph, rng: np.random.Generator, rounds: int) -> TwoCounterState:
    """rounds activations on a copy of state, pairs drawn with draw_pairs."""
    state = state.copy()
    tags, own, other = state.tags.tolist(), state.own.tolist(), state.other.tolist()
    remaining = rounds
    while remaining > 0:
        i, j = draw_pairs(g, rng, min(_BATCH, remaining))
        for a, b in zip(i.tolist(), j.tolist()):
            _exchange(tags, own, other, a, b)
        remaining -= len(i)
    state.own[:] = own
    state.other[:] = other
    state.k += rounds
    return state


def two_counter_preferences(state: TwoCounterState) -> np.ndarray:
    """A node keeps its own message iff C_i >= C'_i, otherwise it prefers the other one."""
    flipped = np.where(state.tags == Choice.G1, Choice.G2, Choice.G1)
    return np.where(state.own >= state.other, state.tags, flipped).astype(np.int8)


def realized_update_matrix(n: int, i: int, j: int) -> np.ndarray:
    """I - (e_i - e_j)(e_i - e_j)^T / 2."""
    if not (0 <= i < n and 0 <= j < n):
        raise InvalidPairError(f"Pair ({i}, {j}) outside [0, {n})")
    if i == j:
        raise InvalidPairError(f"A node cannot average with itself (i = j = {i})")
    w = np.eye(n)
    w[i, i] = w[j, j] = w[i, j] = w[j, i] = 0.5
    return w


def expected_matrix(g: Graph) -> np.ndarray:
    """E[W(k)] under ordered activation, pair (i, j) with probability 1/(n n_i)."""
    if not is_connected(g):
        raise ConnectivityError("The expected update matrix needs a connected graph")
    n = g.n
    adjacency = adjacency_matrix(g)
    inverse_degree = 1.0 / (n * g.degrees.astype(float))
    w = 0.5 * adjacency * (inverse_degree[:, None] + inverse_degree[None, :])
    np.fill_diagonal(w, 1.0 - w.sum(axis=1))
    return w


def second_eigenvalue(w: np.ndarray, tol: Optional[float] = None, max_iter: Optional[int] = None) -> float:
    """Largest eigenvalue magnitude of W - J/n by power iteration orthogonal to the ones vector."""
    tol = config.power_tol if tol is None else tol
    max_iter = config.power_max_iter if max_iter is None else max_iter
    w = np.asarray(w, dtype=float)
    n = w.shape[0]
    deflated = w - np.full((n, n), 1.0 / n)

    vector = np.random.default_rng(0).standard_normal(n)
    vector -= vector.mean()
    norm = np.linalg.norm(vector)
    if norm == 0.0:
        return 0.0
    vector /= norm

    estimate = 0.0
    for iteration in range(1, max_iter + 1):
        image = deflated @ vector
        image -= image.mean()
        norm = np.linalg.norm(image)
        if norm < 1e-300:
            return 0.0
        rayleigh = abs(float(vector @ image))
        vector = image / norm
        if abs(rayleigh - estimate) <= tol:
            logger.debug(f"Power iteration converged after {iteration} iterations")
            return rayleigh
        estimate = rayleigh
    raise IterationLimitError(f"Power iteration did not converge within {max_iter} iterations",
                              details={"estimate": estimate})


def complete_graph_lambda2(n: int) -> float:
    """Closed form 1 - 1/(n - 1) of the complete graph."""
    if n < 2:
        raise DomainError(f"Complete graph needs n >= 2, got {n}")
    return 1.0 - 1.0 / (n - 1)


def averaging_time(epsilon: float, lambda2: float) -> float:
    """log(1/epsilon) / (2 log(1/lambda2)); zero when epsilon = 1 or lambda2 = 0."""
    if not 0 < epsilon <= 1:
        raise DomainError(f"epsilon must lie in (0, 1], got {epsilon!r}")
    if not 0 <= lambda2 < 1:
        raise DomainError(f"lambda2 must lie in [0, 1), got {lambda2!r}")
    if epsilon == 1 or lambda2 == 0:
        return 0.0
    return math.log(1.0 / epsilon) / (2.0 * math.log(1.0 / lambda2))


def sign_consensus_bounds(n: int, n1: int, n2: int, lambda2: float) -> SpectralReport:
    """Step thresholds for reaching sign consensus from n1 g1 holders and n2 g2 holders."""
    if n1 < 0 or n2 < 0 or n1 + n2 != n:
        raise InvalidInputError(f"Holder counts {n1} + {n2} must add up to n = {n}")
    if n1 == n2:
        raise DegenerateTieError(f"n1 = n2 = {n1}: the average is 0 and sign consensus is unreachable")
    if not 0 < lambda2 < 1:
        raise DomainError(f"lambda2 must lie in (0, 1), got {lambda2!r}")

    epsilon = abs(n1 - n2) / (n * math.sqrt(n))
    k_star = averaging_time(epsilon, lambda2)
    return SpectralReport(
        n=n, n1=n1, n2=n2,
        lambda2=lambda2,
        epsilon=epsilon,
        k_star=k_star,
        k_lower=k_star,
        k_upper=6.0 * k_star,
        probability_floor=1.0 - epsilon,
    )


def second_moment_bound(norm0_sq: float, lambda2: float, k: int) -> float:
    """Upper bound lambda2^k * ||N(0)||^2 on E||C(k) - c_ave 1||^2."""
    return (lambda2 ** k) * norm0_sq


def run_consensus(g: Graph, cv: CounterVector, rng: np.random.Generator, stop: Optional[StopRule] = None,
                  sample_every: Optional[int] = None) -> ConsensusTrace:
    """Gossip rounds on a copy of cv until the stop rule fires or its budget runs out.

    The trace holds k = 0, every sample_every-th round (default n) and the last round.
    """
    if not is_connected(g):
        raise ConnectivityError("Consensus needs a connected graph")
    n = g.n
    if cv.n != n:
        raise InvalidInputError(f"Counter vector has {cv.n} entries for a graph with {n} nodes")
    stop = stop or StopRule(kind=StopKind.SIGN_CONSENSUS, budget=config.consensus_budget(n))
    sample_every = sample_every or n
    c_ave = cv.c_ave
    threshold = abs(c_ave) if stop.threshold is None else stop.threshold
    threshold_sq = threshold * threshold

    values = cv.c.tolist()
    positive = sum(1 for v in values if v > 0)
    negative = sum(1 for v in values if v < 0)
    squared = _squared_distance(values, c_ave)
    k = 0
    recheck = threshold_sq * (1.0 + _DISTANCE_MARGIN) + 1e-12 * squared
    samples: List[TraceSample] = [TraceSample(0, math.sqrt(squared), positive == n or negative == n,
                                              positive, negative)]

    def satisfied() -> bool:
        nonlocal squared
        if stop.kind is StopKind.SIGN_CONSENSUS:
            return positive == n or negative == n
        if stop.kind is StopKind.DISTANCE and squared < recheck:
            # running value drifts either way; decide on the exact sum
            squared = _squared_distance(values, c_ave)
            return squared < threshold_sq
        return False

    reason = "budget"
    if satisfied():
        reason = stop.kind.value
    else:
        while k < stop.budget and reason == "budget":
            i, j = draw_pairs(g, rng, min(_BATCH, stop.budget - k))
            for a, b in zip(i.tolist(), j.tolist()):
                x, y = values[a], values[b]
                mean = 0.5 * (x + y)
                positive -= (x > 0) + (y > 0)
                negative -= (x < 0) + (y < 0)
                values[a] = values[b] = mean
                positive += 2 * (mean > 0)
                negative += 2 * (mean < 0)
                squared -= 0.5 * (x - y) * (x - y)
                k += 1
                if k % sample_every == 0:
                    squared = _squared_distance(values, c_ave)
                    samples.append(TraceSample(k, math.sqrt(squared), positive == n or negative == n,
                                               positive, negative))
                if satisfied():
                    reason = stop.kind.value
                    break

    if samples[-1].k != k:
        squared = _squared_distance(values, c_ave)
        samples.append(TraceSample(k, math.sqrt(squared), positive == n or negative == n, positive, negative))
    truncated = reason == "budget" and stop.kind is not StopKind.BUDGET
    if truncated:
        logger.warning(f"⚠️ Consensus run hit its budget of {stop.budget} rounds before '{stop.kind.value}'")

    final = CounterVector(c=np.array(values), k=cv.k + k, initial_sum=cv.initial_sum)
    return ConsensusTrace(samples=samples, rounds=k, stop_reason=reason, truncated=truncated, final=final)


def _squared_distance(values: Sequence[float], c_ave: float) -> float:
    deviation = np.asarray(values) - c_ave
    return float(deviation @ deviation)
