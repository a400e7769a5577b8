"""Figure and summary producers behind the command-line subcommands."""
from functools import partial
from typing import Optional, Sequence, Tuple

import numpy as np

from ..config.settings import config
from ..exceptions import UsageError
from ..models.applications import WomConfig, WomWeighting
from ..models.consensus import StopKind, StopRule
from ..models.experiment import ExperimentConfig, ExperimentOutput
from ..models.graph import Graph
from ..models.ode import OdeState
from ..models.spread import SeedConfig, SpreadResult
from ..utils.logger import logger
from ..utils.seeding import substream
from ..utils.validators import validate_seed_counts
from .application_service import simulate_wom
from .consensus_service import (
    binary_assignments, complete_graph_lambda2, expected_matrix, init_counters_binary, run_consensus,
    second_eigenvalue, sign_consensus_bounds
)
from .graph_service import complete_graph, read_edge_list
from .ode_service import final_s, i_of_s, integrate_two_message
from .spread_service import (
    init_spread, monte_carlo_spread, run_to_absorption, spread_trajectory_rows
)
from .trial_runner import run_trials

FIG1_HEADER = ("l", "s", "i_simulated", "i_theoretical")
FIG2_HEADER = ("initial_difference", "mean_final_difference", "theoretical_line", "mean_abs_difference",
               "standard_error")
FIG3_HEADER = ("k", "holders_g1", "holders_g2", "undecided")
FIG4_HEADER = ("setting", "k", "distance")
FIG5_HEADER = ("bin_left", "bin_right", "count")
SPREAD_HEADER = ("step", "k_over_n", "i1", "i2", "s", "r1", "r2")
CONSENSUS_HEADER = ("k", "distance", "sign_consensus", "positive_count", "negative_count")

_S_GRID = np.linspace(0.0, 1.0, 201)


def _curve_trial(g: Graph, seeds1, seeds2, l: int, max_steps: int, stride: int,
                 master_seed: int, experiment: str, trial: int) -> Tuple[np.ndarray, np.ndarray]:
    """(s, i) fractions of one spreading run sampled every stride steps."""
    rng = substream(master_seed, experiment, trial)
    result = run_to_absorption(init_spread(g, seeds1, seeds2, l), g, rng, max_steps, sample_stride=stride)
    s = np.array([counts.s for _, counts in result.trajectory], dtype=float) / g.n
    i = np.array([counts.i1 + counts.i2 for _, counts in result.trajectory], dtype=float) / g.n
    return s, i


def average_curve(curves: Sequence[Tuple[np.ndarray, np.ndarray]],
                  grid: np.ndarray = _S_GRID) -> Tuple[np.ndarray, np.ndarray]:
    """Mean i over the trials whose realised s range covers each grid point.

    s is non-increasing along a run; at repeated s values the last sample is kept.
    """
    totals = np.zeros(grid.shape[0])
    covering = np.zeros(grid.shape[0], dtype=np.int64)
    for s, i in curves:
        last = np.append(s[1:] != s[:-1], True)
        s_up, i_up = s[last][::-1], i[last][::-1]
        inside = (grid >= s_up[0]) & (grid <= s_up[-1])
        totals[inside] += np.interp(grid[inside], s_up, i_up)
        covering[inside] += 1
    mask = covering > 0
    return grid[mask], totals[mask] / covering[mask]


def theoretical_i(s: float, l: float) -> float:
    """Deterministic infective fraction at s; zero once s is below the final fraction."""
    if s <= 0:
        return 0.0
    return max(0.0, i_of_s(s, l))


def ode_deviation(result: SpreadResult, n: int, l: int, dt: Optional[float] = None) -> float:
    """Largest class-fraction gap between a sampled run, read at t = k/n, and the deterministic model."""
    start = result.trajectory[0][1].fractions(n)
    t_end = result.trajectory[-1][0] / n
    ode = integrate_two_message(OdeState(*start), l, t_end, dt)
    step_size = ode.times[1] - ode.times[0] if len(ode) > 1 else 1.0
    gap = 0.0
    for step, counts in result.trajectory:
        index = min(len(ode) - 1, int(round(step / n / step_size)))
        gap = max(gap, float(np.max(np.abs(np.asarray(counts.fractions(n)) - ode.values[index]))))
    return gap


def linear_fit(x: Sequence[float], y: Sequence[float]) -> Tuple[float, float, float]:
    """Least-squares (slope, intercept, r_squared)."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    spread = float(((y - y.mean()) ** 2).sum())
    r_squared = 1.0 - float((residual ** 2).sum()) / spread if spread > 0 else 1.0
    return float(slope), float(intercept), r_squared


class ExperimentService:
    """Runs one experiment per subcommand and returns its CSV table and summary."""

    DEFAULT_L_LIST = (1, 2, 4, 16)

    def __init__(self, master_seed: Optional[int] = None, workers: Optional[int] = None):
        self.master_seed = config.master_seed if master_seed is None else master_seed
        self.workers = workers or config.workers

    def run(self, cfg: ExperimentConfig) -> ExperimentOutput:
        handlers = {
            "fig1": self.fig1, "fig2": self.fig2, "fig3": self.fig3, "fig4": self.fig4, "fig5": self.fig5,
            "spread": self.spread, "consensus": self.consensus, "bounds": self.bounds,
        }
        if cfg.command not in handlers:
            raise UsageError(f"Unknown experiment '{cfg.command}'")
        return handlers[cfg.command](cfg)

    def _graph(self, cfg: ExperimentConfig, default_nodes: int) -> Graph:
        if cfg.graph_path:
            return read_edge_list(cfg.graph_path, n=cfg.nodes)
        n = cfg.nodes or default_nodes
        if n < 2:
            raise UsageError(f"--nodes must be at least 2, got {n}")
        return complete_graph(n)

    @staticmethod
    def _positive(value: Optional[int], default: int, flag: str) -> int:
        value = default if value is None else value
        if value < 1:
            raise UsageError(f"{flag} must be at least 1, got {value}")
        return value

    @staticmethod
    def _holders(cfg: ExperimentConfig, n: int, share1: float) -> Tuple[int, int]:
        """(n1, n2) for a consensus experiment; the two groups must cover every node."""
        n1 = cfg.seeds1 if cfg.seeds1 is not None else int(round(share1 * n))
        n2 = cfg.seeds2 if cfg.seeds2 is not None else n - n1
        if n1 < 0 or n2 < 0 or n1 + n2 != n:
            raise UsageError(f"--seeds1 + --seeds2 must equal the node count {n}, got {n1} + {n2}")
        return n1, n2

    @staticmethod
    def _seed_counts(cfg: ExperimentConfig, n: int, default: int) -> Tuple[int, int]:
        n1 = default if cfg.seeds1 is None else cfg.seeds1
        n2 = default if cfg.seeds2 is None else cfg.seeds2
        errors = validate_seed_counts(n, n1, n2)
        if errors:
            raise UsageError("; ".join(errors))
        return n1, n2

    def _stop_rule(self, cfg: ExperimentConfig, n: int) -> StopRule:
        budget = self._positive(cfg.rounds, config.consensus_budget(n), "--rounds")
        return StopRule(kind=StopKind(cfg.stop), budget=budget)

    def fig1(self, cfg: ExperimentConfig) -> ExperimentOutput:
        """Mean simulated i against s per threshold l, next to the deterministic curve."""
        g = self._graph(cfg, 5000)
        if g.n < 100:
            raise UsageError(f"fig1 needs at least 100 nodes, got {g.n}")
        trials = self._positive(cfg.trials, 50, "--trials")
        n1, n2 = self._seed_counts(cfg, g.n, 10)
        seeds1, seeds2 = SeedConfig.from_counts(n1, n2).resolve()
        stride = max(1, g.n // 100)
        s0 = (g.n - n1 - n2) / g.n
        grid = np.concatenate(([s0], _S_GRID[_S_GRID < s0][::-1]))
        max_steps = config.spread_budget(g.n)

        output = ExperimentOutput(header=FIG1_HEADER)
        for l in cfg.l_list or self.DEFAULT_L_LIST:
            logger.info(f"📡 fig1: l={l}, n={g.n}, {trials} trials")
            task = partial(_curve_trial, g, seeds1, seeds2, l, max_steps, stride, self.master_seed, f"fig1:l={l}")
            curves = run_trials(task, trials, self.workers)
            s_values, mean_i = average_curve(curves, grid)
            theory = [theoretical_i(s, l) for s in s_values]
            output.rows.extend((l, float(s), float(i), t) for s, i, t in zip(s_values, mean_i, theory))

            params = f"n={g.n},l={l},trials={trials}"
            deviation = float(np.max(np.abs(mean_i - np.asarray(theory)))) if len(s_values) else 0.0
            output.add("fig1", params, f"l{l}_max_deviation", deviation)
            output.add("fig1", params, f"l{l}_mean_final_s", float(np.mean([s[-1] for s, _ in curves])))
            output.add("fig1", params, f"l{l}_theory_final_s", final_s(l))
        return output

    def fig2(self, cfg: ExperimentConfig) -> ExperimentOutput:
        """Mean final difference R1 - R2 across a sweep of initial differences."""
        g = self._graph(cfg, 5000)
        trials = self._positive(cfg.trials, 200, "--trials")
        n1, n2 = self._seed_counts(cfg, g.n, 100)
        total = n1 + n2
        if total < 1:
            raise UsageError("fig2 needs at least one seed in total")
        l = cfg.l
        reach = 1.0 - final_s(l)
        predicted_slope = reach * g.n / total

        output = ExperimentOutput(header=FIG2_HEADER)
        step = max(1, total // 10)
        differences, means = [], []
        for d in range(0, total + 1, step):
            a = (total + d) // 2
            b = total - a
            summary = monte_carlo_spread(g, SeedConfig.from_counts(a, b), l, trials, self.master_seed,
                                         workers=self.workers, experiment=f"fig2:n1={a}")
            initial = a - b
            mean = summary.means["difference"]
            output.rows.append((initial, mean, initial * predicted_slope, summary.means["abs_difference"],
                                summary.standard_error("difference")))
            differences.append(initial)
            means.append(mean)

        params = f"n={g.n},total={total},l={l},trials={trials}"
        slope, intercept, r_squared = linear_fit(differences, means) if len(differences) > 1 else (0.0, 0.0, 1.0)
        output.add("fig2", params, "slope", slope)
        output.add("fig2", params, "intercept", intercept)
        output.add("fig2", params, "r_squared", r_squared)
        output.add("fig2", params, "predicted_slope", predicted_slope)
        return output

    def fig3(self, cfg: ExperimentConfig) -> ExperimentOutput:
        """Holders of each message every n rounds of one averaging run."""
        g = self._graph(cfg, 1000)
        n1, n2 = self._holders(cfg, g.n, 0.4)
        cv = init_counters_binary(binary_assignments(n1, n2))
        trace = run_consensus(g, cv, substream(self.master_seed, "fig3", 0), self._stop_rule(cfg, g.n))

        output = ExperimentOutput(header=FIG3_HEADER)
        for sample in trace.samples:
            undecided = g.n - sample.positive_count - sample.negative_count
            output.rows.append((sample.k, sample.positive_count, sample.negative_count, undecided))

        params = f"n={g.n},n1={n1},n2={n2}"
        output.add("fig3", params, "rounds", trace.rounds)
        output.add("fig3", params, "stop_reason", trace.stop_reason)
        output.add("fig3", params, "sign_consensus", trace.last.sign_consensus)
        output.add("fig3", params, "final_holders_g1", trace.last.positive_count)
        output.add("fig3", params, "final_holders_g2", trace.last.negative_count)
        return output

    def fig4(self, cfg: ExperimentConfig) -> ExperimentOutput:
        """Distance to the average for three or more initial splits."""
        g = self._graph(cfg, 1000)
        n = g.n
        settings = cfg.settings or [(int(round(p * n)), n - int(round(p * n))) for p in (0.45, 0.3, 0.1)]
        if len(settings) < 3:
            raise UsageError(f"fig4 needs at least three settings, got {len(settings)}")
        stop = self._stop_rule(cfg, n)

        output = ExperimentOutput(header=FIG4_HEADER)
        for n1, n2 in settings:
            if n1 < 0 or n2 < 0 or n1 + n2 != n:
                raise UsageError(f"Setting {n1}:{n2} does not cover the {n} nodes")
            label = f"{n1}:{n2}"
            cv = init_counters_binary(binary_assignments(n1, n2))
            trace = run_consensus(g, cv, substream(self.master_seed, f"fig4:{label}", 0), stop)
            output.rows.extend((label, sample.k, sample.distance) for sample in trace.samples)
            output.add("fig4", f"n={n},setting={label}", f"rounds_{n1}_{n2}", trace.rounds)
        return output

    def fig5(self, cfg: ExperimentConfig) -> ExperimentOutput:
        """Histogram of word-of-mouth counters after averaging."""
        g = self._graph(cfg, 1000)
        if not cfg.sigma > 0:
            raise UsageError(f"fig5 needs --sigma > 0, got {cfg.sigma}")
        weighting = WomWeighting.BETWEENNESS if cfg.graph_path else WomWeighting.NONE
        wom = WomConfig(mu=cfg.mu, sigma=cfg.sigma, weighting=weighting)
        rounds = self._positive(cfg.rounds, config.consensus_budget(g.n), "--rounds")
        result = simulate_wom(g, wom, rounds, substream(self.master_seed, "fig5", 0))

        output = ExperimentOutput(header=FIG5_HEADER, rows=[tuple(row) for row in result.histogram])
        params = f"n={g.n},mu={cfg.mu},sigma={cfg.sigma},weighting={weighting.value},rounds={rounds}"
        close = float(np.mean(np.abs(result.final.c - result.final_value) <= 0.01))
        output.add("fig5", params, "initial_mean", result.initial_mean)
        output.add("fig5", params, "final_value", result.final_value)
        output.add("fig5", params, "final_spread", result.final_spread)
        output.add("fig5", params, "within_0.01", close)
        output.add("fig5", params, "sign_consensus", result.sign_consensus)
        return output

    def spread(self, cfg: ExperimentConfig) -> ExperimentOutput:
        """One sampled trajectory plus Monte Carlo statistics of the final state."""
        g = self._graph(cfg, 1000)
        trials = self._positive(cfg.trials, 100, "--trials")
        n1, n2 = self._seed_counts(cfg, g.n, 10)
        seeds = SeedConfig.from_counts(n1, n2)
        seeds1, seeds2 = seeds.resolve()
        l = cfg.l

        run = run_to_absorption(init_spread(g, seeds1, seeds2, l), g, substream(self.master_seed, "spread", 0),
                                sample_stride=g.n)
        output = ExperimentOutput(header=SPREAD_HEADER, rows=spread_trajectory_rows(run, g.n))
        summary = monte_carlo_spread(g, seeds, l, trials, self.master_seed, workers=self.workers)

        params = f"n={g.n},n1={n1},n2={n2},l={l},trials={trials}"
        for name, value in summary.means.items():
            output.add("spread", params, f"mean_{name}", value)
        for name, value in summary.variances.items():
            output.add("spread", params, f"var_{name}", value)
        output.add("spread", params, "mean_s_fraction", summary.means["s_final"] / g.n)
        output.add("spread", params, "truncated", summary.truncated)
        if g.complete:
            output.add("spread", params, "theory_final_s", final_s(l))
            output.add("spread", params, "ode_max_deviation", ode_deviation(run, g.n, l, cfg.dt))
        return output

    def consensus(self, cfg: ExperimentConfig) -> ExperimentOutput:
        """One averaging run sampled every n rounds."""
        g = self._graph(cfg, 1000)
        n1, n2 = self._holders(cfg, g.n, 0.4)
        cv = init_counters_binary(binary_assignments(n1, n2))
        stop = self._stop_rule(cfg, g.n)
        trace = run_consensus(g, cv, substream(self.master_seed, "consensus", 0), stop)

        output = ExperimentOutput(header=CONSENSUS_HEADER, rows=[tuple(sample) for sample in trace.samples])
        params = f"n={g.n},n1={n1},n2={n2},stop={stop.kind.value}"
        output.add("consensus", params, "rounds", trace.rounds)
        output.add("consensus", params, "stop_reason", trace.stop_reason)
        output.add("consensus", params, "truncated", trace.truncated)
        output.add("consensus", params, "final_distance", trace.last.distance)
        output.add("consensus", params, "sign_consensus", trace.last.sign_consensus)
        return output

    def bounds(self, cfg: ExperimentConfig) -> ExperimentOutput:
        """Spectral report: lambda2, epsilon and the sign-consensus step thresholds."""
        g = self._graph(cfg, 1000)
        n1, n2 = self._holders(cfg, g.n, 0.4)
        lambda2 = second_eigenvalue(expected_matrix(g))
        report = sign_consensus_bounds(g.n, n1, n2, lambda2)

        output = ExperimentOutput(header=(), report=report.to_dict())
        params = f"n={g.n},n1={n1},n2={n2}"
        for key, value in report.to_dict().items():
            output.add("bounds", params, key, value)
        if g.complete:
            output.add("bounds", params, "lambda2_closed_form", complete_graph_lambda2(g.n))
        return output
