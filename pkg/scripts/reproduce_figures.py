# scripts/reproduce_figures.py
"""Write the data behind every figure, plus the bounds report, into one directory."""
import argparse
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from main import main as cli_main  # noqa: E402
from rumor_gossip.utils.file_utils import ensure_directory  # noqa: E402
from rumor_gossip.utils.logger import logger  # noqa: E402

FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig5")


def main():
    """Run fig1..fig5 and bounds with one master seed."""
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument('--out-dir', default='figures', help='Destination directory (default: figures)')
    parser.add_argument('--seed', type=int, help='Master seed')
    parser.add_argument('--workers', type=int, default=1, help='Worker processes for trials')
    args = parser.parse_args()

    ensure_directory(args.out_dir)
    common = ['--workers', str(args.workers)]
    if args.seed is not None:
        common += ['--seed', str(args.seed)]

    for name in FIGURES:
        logger.info(f"📊 Reproducing {name}")
        status = cli_main([name, '--out', os.path.join(args.out_dir, f"{name}.csv")] + common)
        if status != 0:
            logger.error(f"Error reproducing {name}")
            return status

    return cli_main(['bounds', '--out', os.path.join(args.out_dir, 'bounds.json')] + common)


if __name__ == "__main__":
    exit(main())
