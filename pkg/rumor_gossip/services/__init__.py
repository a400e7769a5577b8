# rumor_gossip/services/__init__.py
"""Services package: the simulation and analysis operations."""
from .experiment_service import ExperimentService
from .trial_runner import run_trials

__all__ = ["ExperimentService", "run_trials"]
