# rumor_gossip/config/__init__.py
"""Configuration module."""
from .settings import config, SimulationConfig

__all__ = ["config", "SimulationConfig"]
