"""Deterministic random substreams for reproducible experiments.

Trial ``t`` of experiment ``e`` under master seed ``m`` draws from
``numpy.random.SeedSequence(entropy=m, spawn_key=(key(e), t))`` where
``key(e)`` is the first 32 bits of SHA-256 over the experiment name. The
stream therefore depends only on ``(m, e, t)``, never on worker scheduling.
"""
import hashlib

import numpy as np


def experiment_key(experiment: str) -> int:
    """32-bit key for an experiment name."""
    digest = hashlib.sha256(experiment.encode('utf-8')).hexdigest()
    return int(digest[:8], 16)


def substream(master_seed: int, experiment: str, trial: int) -> np.random.Generator:
    """Independent generator for one trial of one experiment."""
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=(experiment_key(experiment), int(trial)))
    return np.random.default_rng(seq)
