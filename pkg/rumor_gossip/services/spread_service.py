"""Two-message rumor spreading: stochastic engine, chain kernel, recursions and exact oracle."""
from collections import defaultdict
from fractions import Fraction
from functools import partial
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..config.settings import config
from ..exceptions import (
    InconsistentStateError, InvalidInputError, InvalidSizeError, InvalidThresholdError, OracleScaleError,
    SeedConflictError
)
from ..models.graph import Graph
from ..models.spread import (
    OBSERVABLES, NodeStatus, SeedConfig, SpreadCounts, SpreadResult, SpreadState, SpreadSummary, TransitionProbs
)
from ..utils.formatters import format_counts
from ..utils.logger import logger
from ..utils.seeding import substream
from ..utils.validators import is_int, require_int, validate_node_ids
from .trial_runner import run_trials

_BATCH = 4096

FinalKey = Tuple[int, int, int]


def init_spread(g: Graph, seeds1: Iterable[int], seeds2: Iterable[int], l: int) -> SpreadState:
    """Seed nodes become infective with their message; everybody else is susceptible."""
    require_int(l, "threshold l", minimum=1, error=InvalidThresholdError)
    seeds1, seeds2 = frozenset(seeds1), frozenset(seeds2)
    errors = validate_node_ids(seeds1 | seeds2, g.n)
    if errors:
        raise InvalidInputError("; ".join(errors))
    overlap = seeds1 & seeds2
    if overlap:
        raise SeedConflictError(f"Nodes {sorted(overlap)} are seeded with both messages",
                                details={"overlap": sorted(overlap)})

    status = np.full(g.n, NodeStatus.SUSCEPTIBLE, dtype=np.int8)
    status[list(seeds1)] = NodeStatus.M1_INFECTIVE
    status[list(seeds2)] = NodeStatus.M2_INFECTIVE
    return SpreadState(status=status, call_counter=np.zeros(g.n, dtype=np.int64), threshold=int(l))


def reduce_messages(seed_sets: Sequence[Iterable[int]], focus: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Collapse k competing messages into (focused message, all adversaries)."""
    sets = [frozenset(s) for s in seed_sets]
    if not 0 <= focus < len(sets):
        raise InvalidInputError(f"focus index {focus} outside [0, {len(sets)})")
    seen: set = set()
    for nodes in sets:
        clash = seen & nodes
        if clash:
            raise SeedConflictError(f"Nodes {sorted(clash)} hold more than one message")
        seen |= nodes
    adversaries = frozenset().union(*(s for idx, s in enumerate(sets) if idx != focus))
    return sets[focus], adversaries


def step(state: SpreadState, g: Graph, rng: np.random.Generator) -> SpreadState:
    """One activation in place; an absorbed state passes through unchanged."""
    if not state.is_absorbed:
        _advance(state, g, rng, 1)
    return state


def _advance(state: SpreadState, g: Graph, rng: np.random.Generator, max_steps: int,
             sample_stride: int = 0, trajectory: Optional[List[Tuple[int, SpreadCounts]]] = None) -> None:
    """Advance until absorption or max_steps activations, in place.

    Per activation a node i is drawn uniformly over all n nodes; an infective i
    calls a neighbor j drawn uniformly over N_i. Random numbers are drawn in
    batches of uniform pairs (u, v): i = floor(u * n), j = N_i[floor(v * n_i)].
    """
    n = state.n
    threshold = state.threshold
    status = state.status.tolist()
    counter = state.call_counter.tolist()
    i1, i2, s, r1, r2 = state.counts
    k = state.step
    complete = g.complete
    adjacency = None if complete else g.adjacency
    degrees = g.degrees.tolist()
    last = n - 1

    remaining = max_steps
    batch = min(_BATCH, 4 * n)
    while remaining > 0 and i1 + i2 > 0:
        batch_start = k
        for u, v in rng.random((min(batch, remaining), 2)).tolist():
            k += 1
            i = int(u * n)
            if i > last:
                i = last
            code = status[i]
            if (code == 1 or code == 2) and degrees[i]:
                offset = int(v * degrees[i])
                if complete:
                    j = offset if offset < i else offset + 1
                else:
                    j = adjacency[i][offset]
                if status[j] == 0:
                    status[j] = code
                    s -= 1
                    if code == 1:
                        i1 += 1
                    else:
                        i2 += 1
                else:
                    # unnecessary call: target informed or removed, whichever message
                    calls = counter[i] + 1
                    counter[i] = calls
                    if calls >= threshold:
                        status[i] = code + 2
                        if code == 1:
                            i1 -= 1
                            r1 += 1
                        else:
                            i2 -= 1
                            r2 += 1
            if sample_stride and k % sample_stride == 0:
                trajectory.append((k, SpreadCounts(i1, i2, s, r1, r2)))
            if i1 + i2 == 0:
                break
        remaining -= k - batch_start
        batch = min(_BATCH, 2 * batch)

    state.status[:] = status
    state.call_counter[:] = counter
    state.step = k
    state.counts = SpreadCounts(i1, i2, s, r1, r2)


def run_to_absorption(state: SpreadState, g: Graph, rng: np.random.Generator,
                      max_steps: Optional[int] = None, sample_stride: Optional[int] = None) -> SpreadResult:
    """Step a copy of state until no infective remains or max_steps is spent.

    With sample_stride, counts are recorded at step 0, every sample_stride steps
    and at the final step.
    """
    if max_steps is None:
        max_steps = config.spread_budget(state.n)
    require_int(max_steps, "max_steps", minimum=1)
    state = state.copy()

    trajectory: List[Tuple[int, SpreadCounts]] = []
    stride = 0
    if sample_stride:
        stride = require_int(sample_stride, "sample_stride", minimum=1)
        trajectory.append((state.step, state.counts))

    _advance(state, g, rng, max_steps, stride, trajectory)

    if stride and trajectory[-1][0] != state.step:
        trajectory.append((state.step, state.counts))
    if not state.is_absorbed:
        logger.warning(f"⚠️ Spreading run truncated after {state.step} steps "
                       f"({format_counts(state.counts._asdict())})")
    return SpreadResult(final=state.counts, steps=state.step, absorbed=state.is_absorbed, trajectory=trajectory)


def _check_counts(counts: Sequence[float], n: int) -> SpreadCounts:
    counts = SpreadCounts(*counts)
    if not is_int(n) or n < 2:
        raise InvalidSizeError(f"The aggregate chain needs n >= 2, got {n!r}")
    if any(value < 0 for value in counts):
        raise InconsistentStateError(f"Counts {tuple(counts)} contain negative entries")
    if abs(counts.total - n) > 1e-9 * max(1, n):
        raise InconsistentStateError(f"Counts {tuple(counts)} sum to {counts.total}, expected {n}")
    return counts


def transition_probabilities(counts: Sequence[int], n: int, uncorrected: bool = False) -> TransitionProbs:
    """Five-way kernel of the aggregate chain on a complete graph with l = 1.

    The corrected kernel counts n-1-S non-susceptible targets (a node cannot
    call itself) so the five probabilities sum to 1; uncorrected uses N-S,
    counting the caller among its own targets.
    """
    i1, i2, s, r1, r2 = _check_counts(counts, n)
    pairs = n * (n - 1)
    informed_targets = (n - s) if uncorrected else (n - 1 - s)
    return TransitionProbs(
        p0=(s + r1 + r2) / n,
        p1_plus=i1 * s / pairs,
        p1_minus=i1 * informed_targets / pairs,
        p2_plus=i2 * s / pairs,
        p2_minus=i2 * informed_targets / pairs,
    )


def expectation_step(counts: Sequence[float], n: int, l: float = 1, uncorrected: bool = True) -> SpreadCounts:
    """One step of the expectation recursions, removal terms scaled by 1/l."""
    i1, i2, s, r1, r2 = _check_counts(counts, n)
    if l < 1:
        raise InvalidThresholdError(f"threshold l must be >= 1, got {l!r}")
    pairs = n * (n - 1)
    informed_targets = (n - s) if uncorrected else (n - 1 - s)
    spread1, spread2 = i1 * s / pairs, i2 * s / pairs
    removal1 = i1 * informed_targets / (l * pairs)
    removal2 = i2 * informed_targets / (l * pairs)
    return SpreadCounts(
        i1=i1 + spread1 - removal1,
        i2=i2 + spread2 - removal2,
        s=s - spread1 - spread2,
        r1=r1 + removal1,
        r2=r2 + removal2,
    )


def expectation_trajectory(counts: Sequence[float], n: int, l: float, steps: int, stride: int = 1,
                           uncorrected: bool = True) -> List[Tuple[int, SpreadCounts]]:
    """Iterate expectation_step, keeping every stride-th value (step 0 included)."""
    current = _check_counts(counts, n)
    samples = [(0, current)]
    for k in range(1, steps + 1):
        current = expectation_step(current, n, l, uncorrected)
        if k % stride == 0:
            samples.append((k, current))
    return samples


def exact_absorption_distribution(n: int, n1: int, n2: int) -> Dict[FinalKey, float]:
    """Exact law of (S, R1, R2) at absorption on K_n with l = 1.

    Self-loops are conditioned away; every remaining transition lowers
    2S + I1 + I2 by one, so probability mass is pushed level by level.
    """
    if not is_int(n) or n < 2:
        raise InvalidSizeError(f"The oracle needs n >= 2, got {n!r}")
    if n > config.oracle_max_nodes:
        raise OracleScaleError(f"Exact oracle limited to n <= {config.oracle_max_nodes}, got {n}")
    if not (is_int(n1) and is_int(n2)) or n1 < 0 or n2 < 0 or n1 + n2 > n:
        raise InvalidInputError(f"Seed counts ({n1!r}, {n2!r}) invalid for n = {n}")

    start = (n1, n2, n - n1 - n2, 0)
    top = 2 * start[2] + n1 + n2
    levels: Dict[int, Dict[Tuple[int, int, int, int], Fraction]] = defaultdict(lambda: defaultdict(Fraction))
    levels[top][start] = Fraction(1)
    final: Dict[FinalKey, Fraction] = defaultdict(Fraction)

    for level in range(top, -1, -1):
        for (i1, i2, s, r1), mass in levels.pop(level, {}).items():
            r2 = n - i1 - i2 - s - r1
            if i1 + i2 == 0:
                final[(s, r1, r2)] += mass
                continue
            moves = (
                (i1 * s, (i1 + 1, i2, s - 1, r1)),
                (i1 * (n - 1 - s), (i1 - 1, i2, s, r1 + 1)),
                (i2 * s, (i1, i2 + 1, s - 1, r1)),
                (i2 * (n - 1 - s), (i1, i2 - 1, s, r1)),
            )
            weight_total = (i1 + i2) * (n - 1)
            for weight, target in moves:
                if weight:
                    levels[level - 1][target] += mass * Fraction(weight, weight_total)

    return {key: float(prob) for key, prob in sorted(final.items())}


def _observable(key: FinalKey, observable: str) -> int:
    s, r1, r2 = key
    values = {"s_final": s, "r1_final": r1, "r2_final": r2, "difference": r1 - r2, "abs_difference": abs(r1 - r2)}
    if observable not in values:
        raise InvalidInputError(f"Unknown observable {observable!r}; expected one of {OBSERVABLES}")
    return values[observable]


def distribution_mean(distribution: Dict[FinalKey, float], observable: str) -> float:
    """Mean of one final observable under an absorption law."""
    return sum(p * _observable(key, observable) for key, p in distribution.items())


def distribution_variance(distribution: Dict[FinalKey, float], observable: str) -> float:
    mean = distribution_mean(distribution, observable)
    return sum(p * (_observable(key, observable) - mean) ** 2 for key, p in distribution.items())


def _spread_trial(g: Graph, seeds1: FrozenSet[int], seeds2: FrozenSet[int], l: int, max_steps: int,
                  master_seed: int, experiment: str, trial: int) -> Tuple[int, int, int, bool]:
    rng = substream(master_seed, experiment, trial)
    result = run_to_absorption(init_spread(g, seeds1, seeds2, l), g, rng, max_steps)
    final = result.final
    return final.s, final.i1 + final.r1, final.i2 + final.r2, result.absorbed


def monte_carlo_spread(g: Graph, seeds: SeedConfig, l: int, trials: int, master_seed: int,
                       max_steps: Optional[int] = None, workers: int = 1,
                       experiment: str = "spread") -> SpreadSummary:
    """Independent runs from one seed configuration, aggregated in trial order."""
    require_int(trials, "trials", minimum=1)
    seeds1, seeds2 = seeds.resolve()
    init_spread(g, seeds1, seeds2, l)
    if max_steps is None:
        max_steps = config.spread_budget(g.n)

    logger.info(f"📡 Spreading: n={g.n} seeds={len(seeds1)}+{len(seeds2)} l={l} trials={trials}")
    task = partial(_spread_trial, g, seeds1, seeds2, l, max_steps, master_seed, experiment)
    outcomes = run_trials(task, trials, workers)

    finals = np.array([outcome[:3] for outcome in outcomes], dtype=float)
    values = {
        "s_final": finals[:, 0],
        "r1_final": finals[:, 1],
        "r2_final": finals[:, 2],
        "difference": finals[:, 1] - finals[:, 2],
        "abs_difference": np.abs(finals[:, 1] - finals[:, 2]),
    }
    ddof = 1 if trials > 1 else 0
    summary = SpreadSummary(
        trials=trials,
        means={name: float(values[name].mean()) for name in OBSERVABLES},
        variances={name: float(values[name].var(ddof=ddof)) for name in OBSERVABLES},
        truncated=sum(1 for outcome in outcomes if not outcome[3]),
    )
    logger.info(f"✅ Mean final susceptible fraction {summary.means['s_final'] / g.n:.4f}")
    return summary


def spread_trajectory_rows(result: SpreadResult, n: int) -> List[Tuple[float, ...]]:
    """Rows step,k_over_n,i1,i2,s,r1,r2 with class sizes as fractions."""
    return [(step, step / n) + tuple(value / n for value in counts) for step, counts in result.trajectory]
