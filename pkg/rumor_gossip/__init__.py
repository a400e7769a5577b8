# rumor_gossip/__init__.py
"""Competing-rumor spreading and averaging sign consensus on graphs."""
from .config.settings import config
from .exceptions import GossipError
from .services.experiment_service import ExperimentService

__version__ = "1.0.0"
__all__ = ["ExperimentService", "GossipError", "config"]
