# scripts/check_final_reach.py
"""Compare simulated final susceptible fractions with the deterministic prediction."""
import argparse
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from rumor_gossip.config.settings import config  # noqa: E402
from rumor_gossip.exceptions import GossipError  # noqa: E402
from rumor_gossip.models.spread import SeedConfig  # noqa: E402
from rumor_gossip.services.graph_service import complete_graph  # noqa: E402
from rumor_gossip.services.ode_service import final_s  # noqa: E402
from rumor_gossip.services.spread_service import monte_carlo_spread  # noqa: E402
from rumor_gossip.utils.formatters import format_key_values, format_percentage  # noqa: E402
from rumor_gossip.utils.logger import logger  # noqa: E402


def main():
    """Print simulated and predicted final susceptible fractions for l = 1 and l = 2."""
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument('--nodes', type=int, default=2000)
    parser.add_argument('--seeds', type=int, default=10, help='Initial holders of each message')
    parser.add_argument('--trials', type=int, default=500)
    parser.add_argument('--seed', type=int, default=config.master_seed)
    parser.add_argument('--workers', type=int, default=config.workers)
    args = parser.parse_args()

    try:
        g = complete_graph(args.nodes)
        lines = []
        for l in (1, 2):
            summary = monte_carlo_spread(g, SeedConfig.from_counts(args.seeds, args.seeds), l, args.trials,
                                         args.seed, workers=args.workers, experiment=f"final_reach:l={l}")
            simulated = summary.means["s_final"] / g.n
            predicted = final_s(l)
            logger.info(f"📊 l={l}: simulated {format_percentage(simulated)}, predicted {format_percentage(predicted)}")
            lines += [(f"l{l}_simulated_s", simulated), (f"l{l}_predicted_s", predicted),
                      (f"l{l}_gap", abs(simulated - predicted))]
        print(format_key_values(lines))
    except GossipError as e:
        logger.error(f"Error checking final reach: {e.message}")
        return 1

    return 0


if __name__ == "__main__":
    exit(main())
