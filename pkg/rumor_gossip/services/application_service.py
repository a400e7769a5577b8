"""Applications of averaging consensus: repeated voting and word-of-mouth competition."""
from typing import List, Optional, Sequence

import numpy as np

from ..config.settings import config
from ..exceptions import ConnectivityError
from ..models.applications import (
    HistogramBin, VotingResult, VotingState, VotingTraceRow, WomConfig, WomResult, WomWeighting
)
from ..models.consensus import Choice, CounterVector, StopKind, StopRule
from ..models.graph import Graph
from ..utils.logger import logger
from ..utils.validators import require_int
from .consensus_service import decision, draw_pairs, has_sign_consensus, init_counters_binary, run_consensus
from .graph_service import betweenness_centrality, complete_graph, is_connected

_BATCH = 4096


def voting_payoffs(choices: Sequence[int]) -> np.ndarray:
    """Agents (self included) sharing each agent's choice; an undecided agent scores 1."""
    choices = np.asarray(choices, dtype=np.int64)
    camp_sizes = np.bincount(choices, minlength=3)
    payoffs = camp_sizes[choices]
    payoffs[choices == Choice.UNDECIDED] = 1
    return payoffs


def _camp(value: float) -> int:
    return 1 if value > 0 else (2 if value < 0 else 0)


def simulate_voting_game(g: Graph, preferences: Sequence[int], rounds: int, rng: np.random.Generator,
                         history_every: Optional[int] = None) -> VotingResult:
    """Gossip averaging on +-1 counters; the observer logs camps and payoffs.

    Agents never see the payoffs. The trace has one row per round (round 0
    included); per-agent payoffs are kept every history_every rounds (default n).
    """
    if not is_connected(g):
        raise ConnectivityError("The voting game needs a connected graph")
    rounds = require_int(rounds, "rounds", minimum=0)
    counters = init_counters_binary(preferences)
    history_every = history_every or g.n

    values = counters.c.tolist()
    camps = [0, 0, 0]
    for value in values:
        camps[_camp(value)] += 1

    def row(k: int) -> VotingTraceRow:
        undecided, camp1, camp2 = camps
        return VotingTraceRow(k, camp1, camp2, undecided, camp1 * camp1 + camp2 * camp2 + undecided)

    trace: List[VotingTraceRow] = [row(0)]
    history = [voting_payoffs(decision(counters))]
    k = 0
    while k < rounds:
        i, j = draw_pairs(g, rng, min(_BATCH, rounds - k))
        for a, b in zip(i.tolist(), j.tolist()):
            x, y = values[a], values[b]
            mean = 0.5 * (x + y)
            camps[_camp(x)] -= 1
            camps[_camp(y)] -= 1
            values[a] = values[b] = mean
            camps[_camp(mean)] += 2
            k += 1
            trace.append(row(k))
            if k % history_every == 0:
                history.append(voting_payoffs(_choices(values)))

    counters = CounterVector(c=np.array(values), k=rounds, initial_sum=counters.initial_sum)
    final_choices = decision(counters)
    state = VotingState(preferences=np.asarray(preferences, dtype=np.int8), counters=counters,
                        payoff_history=history)
    result = VotingResult(state=state, trace=trace, final_choices=final_choices,
                          final_payoffs=voting_payoffs(final_choices))
    logger.info(f"🗳️ Voting game after {rounds} rounds: camps {trace[-1].camp1}/{trace[-1].camp2}, "
                f"{trace[-1].undecided} undecided")
    return result


def _choices(values: Sequence[float]) -> np.ndarray:
    return np.array([_camp(value) for value in values], dtype=np.int8)


def wom_init(g: Graph, wom: WomConfig, rng: np.random.Generator) -> CounterVector:
    """Gaussian convincingness per node, optionally scaled by 1 + normalized betweenness."""
    draws = rng.normal(wom.mu, wom.sigma, size=g.n)
    if wom.weighting is WomWeighting.BETWEENNESS:
        draws = draws * (1.0 + betweenness_centrality(g).normalized)
    return CounterVector(c=draws)


def counter_histogram(values: Sequence[float], bins: Optional[int] = None) -> List[HistogramBin]:
    """Uniform bins spanning [min, max] of values."""
    counts, edges = np.histogram(np.asarray(values, dtype=float), bins=bins or config.histogram_bins)
    return [HistogramBin(float(edges[b]), float(edges[b + 1]), int(counts[b])) for b in range(len(counts))]


def simulate_wom(g: Graph, wom: WomConfig, rounds: int, rng: np.random.Generator,
                 bins: Optional[int] = None) -> WomResult:
    """Initialise on g, then average for a fixed number of rounds on the complete graph."""
    rounds = require_int(rounds, "rounds", minimum=1)
    initial = wom_init(g, wom, rng)
    arena = g if g.complete else complete_graph(g.n)
    trace = run_consensus(arena, initial, rng, StopRule(kind=StopKind.BUDGET, budget=rounds))
    final = trace.final
    logger.info(f"✅ Word of mouth settled near {float(final.c.mean()):.6f} (initial mean {initial.c_ave:.6f})")
    return WomResult(
        initial=initial,
        final=final,
        histogram=counter_histogram(final.c, bins),
        initial_mean=initial.c_ave,
        final_value=float(final.c.mean()),
        final_spread=float(final.c.max() - final.c.min()),
        sign_consensus=has_sign_consensus(final),
        trace=trace.samples,
    )
