#!/usr/bin/env python3
"""
Rumor Gossip Simulator - Main CLI Entry Point

Usage:
    python main.py fig1 [options]        # i against s per threshold l, simulated and deterministic
    python main.py fig2 [options]        # final vs initial difference between the two messages
    python main.py fig3 [options]        # holders of each message during averaging consensus
    python main.py fig4 [options]        # distance to the average for several initial splits
    python main.py fig5 [options]        # word-of-mouth counter histogram after averaging
    python main.py spread [options]      # one spreading trajectory + Monte Carlo summary
    python main.py consensus [options]   # one consensus trace with a chosen stop rule
    python main.py bounds [options]      # lambda2, epsilon and sign-consensus step thresholds

Common options:
    --nodes N           Node count (complete graph unless --graph is given)
    --graph PATH        Edge-list file, one "u v" pair per line
    --l L               Removal threshold (unnecessary calls before a node stops)
    --l-list 1,2,4      Thresholds for fig1
    --seeds1/--seeds2   Initial holders of message 1 / 2 (g1 / g2 for consensus)
    --settings 450:550,300:700,100:900   Initial splits for fig4
    --trials, --rounds, --mu, --sigma, --dt, --stop {budget,sign,distance}
    --seed S            Master seed; identical seeds give byte-identical CSV output
    --out PATH          CSV destination (default: <command>.csv); JSON report for bounds
    --workers W         Worker processes for independent trials
    --json              Print the bounds report as one JSON object
    --log-level LEVEL   DEBUG, INFO, WARNING or ERROR (default: WARNING)

The summary of every run is printed to standard output as key=value lines.
"""

import sys
import json
import argparse
from typing import List, Optional, Tuple

from rumor_gossip.config.settings import config
from rumor_gossip.exceptions import GossipError
from rumor_gossip.models.experiment import ExperimentConfig
from rumor_gossip.services.experiment_service import ExperimentService
from rumor_gossip.utils.file_utils import write_csv, write_json_file
from rumor_gossip.utils.formatters import format_records
from rumor_gossip.utils.logger import logger, setup_logger

COMMANDS = {
    "fig1": "Infective ratio against susceptible ratio, simulation and theory",
    "fig2": "Mean final difference against initial difference",
    "fig3": "Holders of each message at each round of averaging",
    "fig4": "Distance to the average for several initial settings",
    "fig5": "Final distribution of word-of-mouth counters",
    "spread": "Single spreading trajectory and Monte Carlo summary",
    "consensus": "Consensus trace for one initial split",
    "bounds": "Spectral quantities and sign-consensus bounds",
}


def parse_int_list(text: str) -> List[int]:
    """Parse '1,2,4' into [1, 2, 4]."""
    try:
        values = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(value < 1 for value in values):
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return values


def parse_settings(text: str) -> List[Tuple[int, int]]:
    """Parse 'n1:n2,n1:n2,...' into [(n1, n2), ...]."""
    settings = []
    for part in text.split(','):
        try:
            n1, n2 = (int(value) for value in part.split(':'))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected n1:n2 pairs separated by commas, got {part!r}")
        settings.append((n1, n2))
    return settings


def run_experiment(args: argparse.Namespace) -> int:
    """Run one subcommand, write its CSV and print its summary."""
    try:
        cfg = ExperimentConfig.from_args(args)
        service = ExperimentService(master_seed=cfg.master_seed, workers=cfg.workers)
        output = service.run(cfg)

        if output.header:
            write_csv(cfg.out or f"{cfg.command}.csv", output.header, output.rows)
        elif cfg.out and output.report is not None:
            write_json_file(cfg.out, output.report)

        if cfg.json_output and output.report is not None:
            print(json.dumps(output.report))
        else:
            print(format_records(output.records))
        return 0
    except GossipError as e:
        logger.error(f"{args.command} failed: {e.message}")
        print(f"error: {e.message}", file=sys.stderr)
        return 1
    except Exception as e:
        logger.error(f"Unexpected error in {args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--nodes', type=int, help='Node count')
    common.add_argument('--graph', help='Edge-list file (default: complete graph)')
    common.add_argument('--l', type=int, default=1, help='Removal threshold l (default: 1)')
    common.add_argument('--l-list', dest='l_list', type=parse_int_list, help='Thresholds for fig1, e.g. 1,2,4,16')
    common.add_argument('--seeds1', type=int, help='Initial holders of message 1')
    common.add_argument('--seeds2', type=int, help='Initial holders of message 2')
    common.add_argument('--settings', type=parse_settings, help='fig4 initial splits, e.g. 450:550,300:700,100:900')
    common.add_argument('--trials', type=int, help='Independent Monte Carlo trials')
    common.add_argument('--rounds', type=int, help='Round budget for consensus runs')
    common.add_argument('--mu', type=float, default=-0.01, help='Mean convincingness (fig5)')
    common.add_argument('--sigma', type=float, default=1.0, help='Convincingness standard deviation (fig5)')
    common.add_argument('--dt', type=float, help='Integrator step (default from configuration)')
    common.add_argument('--stop', choices=['budget', 'sign', 'distance'], default='sign',
                        help='Stop rule for consensus runs')
    common.add_argument('--seed', type=int, help='Master seed (default from configuration)')
    common.add_argument('--out', help='Output path')
    common.add_argument('--workers', type=int, help='Worker processes for trials')
    common.add_argument('--json', action='store_true', help='Print the bounds report as JSON')
    common.add_argument('--log-level', dest='log_level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], help='Logging level')

    parser = argparse.ArgumentParser(
        description="Rumor spreading and averaging consensus simulator",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__
    )
    subparsers = parser.add_subparsers(dest='command', help='Available commands')
    for name, help_text in COMMANDS.items():
        subparsers.add_parser(name, parents=[common], help=help_text)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 1

    setup_logger('rumor_gossip', level=args.log_level, log_file=config.log_file)
    return run_experiment(args)


if __name__ == "__main__":
    sys.exit(main())
