import math

import numpy as np
import pytest
from scipy import stats

from rumor_gossip.exceptions import ConnectivityError, InvalidInputError
from rumor_gossip.models.applications import WomConfig, WomWeighting
from rumor_gossip.models.consensus import Choice
from rumor_gossip.services.application_service import (
    counter_histogram, simulate_voting_game, simulate_wom, voting_payoffs, wom_init
)
from rumor_gossip.services.consensus_service import apply_pairs, binary_assignments, draw_pairs, replay_matrix
from rumor_gossip.services.graph_service import complete_graph, from_edge_list
from tests.conftest import random_connected_graph


def test_voting_payoffs_count_the_own_camp():
    choices = [Choice.G1, Choice.G1, Choice.G2, Choice.UNDECIDED, Choice.G1]
    assert voting_payoffs(choices).tolist() == [3, 3, 1, 1, 3]
    assert voting_payoffs([Choice.UNDECIDED] * 3).tolist() == [1, 1, 1]
    assert voting_payoffs([Choice.G2] * 4).tolist() == [4] * 4


def test_voting_trace_bookkeeping(rng):
    g = complete_graph(12)
    result = simulate_voting_game(g, binary_assignments(7, 5), rounds=100, rng=rng, history_every=25)
    assert len(result.trace) == 101
    assert result.trace[0] == (0, 7, 5, 0, 49 + 25)
    for k, row in enumerate(result.trace):
        assert row.round == k
        assert row.camp1 + row.camp2 + row.undecided == 12
        assert row.total_payoff == row.camp1 ** 2 + row.camp2 ** 2 + row.undecided
    assert len(result.state.payoff_history) == 5
    for payoffs in result.state.payoff_history:
        assert np.all((payoffs >= 1) & (payoffs <= 12))
    assert int(result.final_payoffs.sum()) == result.trace[-1].total_payoff
    assert result.state.counters.k == 100


def test_voting_game_reaches_the_majority():
    n, rounds, runs = 100, 10_000, 100
    g = complete_graph(n)
    unanimous = 0
    for seed in range(runs):
        result = simulate_voting_game(g, binary_assignments(60, 40), rounds=rounds, rng=np.random.default_rng(seed))
        assert len(result.state.payoff_history) == rounds // n + 1
        if result.trace[-1].total_payoff == n * n:
            assert result.unanimous
            assert np.all(result.final_choices == Choice.G1)
            unanimous += 1
    assert unanimous >= 0.95 * runs


@pytest.mark.slow
def test_voting_mean_payoff_rises_window_by_window():
    n, rounds, runs = 100, 10_000, 100
    g = complete_graph(n)
    totals = np.zeros(rounds + 1)
    for seed in range(runs):
        result = simulate_voting_game(g, binary_assignments(60, 40), rounds=rounds, rng=np.random.default_rng(seed))
        totals += [row.total_payoff for row in result.trace]
    windows = (totals[1:] / runs).reshape(-1, n).mean(axis=1)
    steps = np.diff(windows)
    assert np.mean(steps >= 0) >= 0.9
    assert windows[-1] >= 0.99 * n * n


def test_voting_payoff_grows_over_time(rng):
    n, rounds, runs = 30, 3000, 20
    g = random_connected_graph(n, 60, rng)
    totals = np.zeros(rounds + 1)
    for _ in range(runs):
        result = simulate_voting_game(g, binary_assignments(18, 12), rounds=rounds, rng=rng)
        totals += [row.total_payoff for row in result.trace]
    blocks = (totals[1:] / runs).reshape(-1, n).mean(axis=1)
    assert blocks[-1] > blocks[0]
    assert blocks[-1] >= 0.9 * n * n


def test_voting_game_errors(rng):
    with pytest.raises(ConnectivityError):
        simulate_voting_game(from_edge_list(4, [(0, 1), (2, 3)]), binary_assignments(2, 2), 10, rng)
    with pytest.raises(InvalidInputError):
        simulate_voting_game(complete_graph(3), [Choice.G1, Choice.UNDECIDED, Choice.G2], 10, rng)
    with pytest.raises(InvalidInputError):
        simulate_voting_game(complete_graph(3), binary_assignments(2, 1), -1, rng)


def test_wom_config_rejects_negative_sigma():
    with pytest.raises(InvalidInputError):
        WomConfig(mu=0.0, sigma=-1.0)


def test_wom_init_draws_gaussians(rng):
    cv = wom_init(complete_graph(20000), WomConfig(mu=0.3, sigma=2.0), rng)
    assert abs(cv.c.mean() - 0.3) <= 4 * 2.0 / math.sqrt(20000)
    assert cv.c.std() == pytest.approx(2.0, rel=0.05)


def test_wom_init_betweenness_weighting(rng, star5):
    plain = wom_init(star5, WomConfig(mu=1.0, sigma=0.0), rng)
    weighted = wom_init(star5, WomConfig(mu=1.0, sigma=0.0, weighting=WomWeighting.BETWEENNESS), rng)
    assert plain.c.tolist() == [1.0] * 5
    assert weighted.c.tolist() == [2.0, 1.0, 1.0, 1.0, 1.0]


def test_wom_weighting_on_complete_graph_changes_nothing(rng):
    cv = wom_init(complete_graph(6), WomConfig(mu=-1.0, sigma=0.0, weighting=WomWeighting.BETWEENNESS), rng)
    assert cv.c.tolist() == [-1.0] * 6


def test_simulate_wom_keeps_the_mean(rng):
    result = simulate_wom(complete_graph(200), WomConfig(mu=-0.5, sigma=1.0), rounds=10000, rng=rng)
    assert result.final.c.sum() == pytest.approx(result.initial.c.sum(), abs=1e-9)
    assert result.final_value == pytest.approx(result.initial_mean, abs=1e-9)
    assert result.sign_consensus
    assert np.all(result.final.c < 0)
    assert result.final_spread < 1e-6
    assert sum(b.count for b in result.histogram) == 200
    assert result.trace[-1].k == 10000


def test_simulate_wom_scales_linearly():
    g = complete_graph(50)
    base = simulate_wom(g, WomConfig(mu=0.2, sigma=1.0), rounds=500, rng=np.random.default_rng(7))
    scaled = simulate_wom(g, WomConfig(mu=0.6, sigma=3.0), rounds=500, rng=np.random.default_rng(7))
    assert np.allclose(scaled.final.c, 3.0 * base.final.c)
    assert np.allclose(scaled.initial.c, 3.0 * base.initial.c)


def test_simulate_wom_averages_on_the_complete_graph(rng, star5):
    result = simulate_wom(star5, WomConfig(mu=1.0, sigma=0.5, weighting=WomWeighting.BETWEENNESS),
                          rounds=2000, rng=rng, bins=4)
    assert len(result.histogram) == 4
    assert result.final_value == pytest.approx(result.initial_mean)
    assert result.final_spread < 1e-6


def test_simulate_wom_needs_rounds(rng):
    with pytest.raises(InvalidInputError):
        simulate_wom(complete_graph(5), WomConfig(mu=0.0, sigma=1.0), rounds=0, rng=rng)


def test_counter_histogram():
    bins = counter_histogram([0.0, 1.0, 2.0, 3.0], bins=3)
    assert [b.count for b in bins] == [1, 1, 2]
    assert bins[0].bin_left == 0.0 and bins[-1].bin_right == 3.0
    assert bins[1].bin_left == pytest.approx(1.0)


def test_counter_histogram_default_bins():
    bins = counter_histogram(np.linspace(-1, 1, 500))
    assert len(bins) == 50
    assert sum(b.count for b in bins) == 500


@pytest.mark.slow
def test_wom_settles_on_the_sign_of_the_initial_mean():
    n, runs = 200, 120
    g = complete_graph(n)
    rounds = math.ceil(20 * n * math.log(n))
    decided = agreeing = 0
    for seed in range(runs):
        result = simulate_wom(g, WomConfig(mu=-0.01, sigma=1.0), rounds=rounds, rng=np.random.default_rng(seed))
        assert result.final_value == pytest.approx(result.initial_mean, abs=1e-6)
        if abs(result.initial_mean) < 0.005:
            continue
        decided += 1
        agreeing += bool(np.all(np.sign(result.final.c) == np.sign(result.initial_mean)))
    assert decided >= runs // 2
    assert agreeing >= 0.95 * decided


@pytest.mark.slow
def test_wom_large_population_shrinks_the_spread(rng):
    result = simulate_wom(complete_graph(1000), WomConfig(mu=-0.01, sigma=1.0), rounds=50000, rng=rng)
    assert result.final_spread < 0.1 * (result.initial.c.max() - result.initial.c.min())
    assert result.final_value == pytest.approx(result.initial_mean, abs=1e-9)


def test_wom_counters_stay_gaussian_under_a_fixed_pair_sequence(rng):
    n, mu, sigma = 40, 0.5, 2.0
    g = complete_graph(n)
    i, j = draw_pairs(g, rng, 60)
    row = replay_matrix(n, i, j)[0]
    scale = sigma * np.linalg.norm(row)
    samples = []
    for _ in range(500):
        cv = apply_pairs(wom_init(g, WomConfig(mu=mu, sigma=sigma), rng), i, j)
        samples.append((cv.c[0] - mu) / scale)
    assert stats.shapiro(samples).pvalue > 0.001
    assert abs(np.mean(samples)) <= 4 / math.sqrt(500)
