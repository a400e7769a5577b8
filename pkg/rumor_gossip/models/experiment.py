# rumor_gossip/models/experiment.py
"""Experiment configuration and output records."""
import argparse
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from ..exceptions import InvalidInputError


@dataclass
class ExperimentConfig:
    """Parameters of one CLI invocation."""
    command: str
    nodes: Optional[int] = None
    l: int = 1
    l_list: List[int] = field(default_factory=list)
    seeds1: Optional[int] = None
    seeds2: Optional[int] = None
    trials: Optional[int] = None
    rounds: Optional[int] = None
    mu: float = -0.01
    sigma: float = 1.0
    dt: Optional[float] = None
    master_seed: Optional[int] = None
    out: Optional[str] = None
    graph_path: Optional[str] = None
    settings: List[Tuple[int, int]] = field(default_factory=list)
    stop: str = "sign"
    workers: int = 1
    json_output: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'ExperimentConfig':
        """Create ExperimentConfig from parsed command-line arguments."""
        return cls(
            command=args.command,
            nodes=args.nodes,
            l=args.l,
            l_list=list(args.l_list or []),
            seeds1=args.seeds1,
            seeds2=args.seeds2,
            trials=args.trials,
            rounds=args.rounds,
            mu=args.mu,
            sigma=args.sigma,
            dt=args.dt,
            master_seed=args.seed,
            out=args.out,
            graph_path=args.graph,
            settings=list(args.settings or []),
            stop=args.stop,
            workers=args.workers,
            json_output=args.json,
        )


@dataclass(frozen=True)
class RunRecord:
    """One summary metric of an experiment."""
    experiment: str
    parameters: str
    metric: str
    value: float

    def __post_init__(self):
        if isinstance(self.value, float) and not math.isfinite(self.value):
            raise InvalidInputError(f"Metric {self.metric} of {self.experiment} is not finite: {self.value}")

    @property
    def key(self) -> str:
        return self.metric


@dataclass
class ExperimentOutput:
    """CSV table plus summary records produced by one experiment."""
    header: Tuple[str, ...]
    rows: List[Tuple] = field(default_factory=list)
    records: List[RunRecord] = field(default_factory=list)
    report: Optional[dict] = None

    def add(self, experiment: str, parameters: str, metric: str, value) -> None:
        self.records.append(RunRecord(experiment=experiment, parameters=parameters, metric=metric, value=value))
