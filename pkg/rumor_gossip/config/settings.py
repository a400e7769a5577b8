"""Configuration management for the rumor gossip simulator."""
import math
import os
from typing import Optional

from dotenv import load_dotenv

from ..exceptions import ConfigurationError

# Load environment variables
load_dotenv()


class SimulationConfig:
    """Configuration class for simulation defaults."""

    def __init__(self):
        # Seeding and parallelism
        self.master_seed = self._get_int_env('RUMOR_GOSSIP_SEED', 20240501, minimum=0)
        self.workers = self._get_int_env('RUMOR_GOSSIP_WORKERS', 1, minimum=1)

        # Integrator
        self.ode_dt = self._get_float_env('RUMOR_GOSSIP_ODE_DT', 1e-3, positive=True)

        # Run budgets
        self.spread_budget_factor = self._get_int_env('RUMOR_GOSSIP_SPREAD_BUDGET_FACTOR', 100, minimum=1)
        self.consensus_budget_factor = self._get_int_env('RUMOR_GOSSIP_CONSENSUS_BUDGET_FACTOR', 50, minimum=1)

        # Spectral and oracle limits
        self.power_tol = self._get_float_env('RUMOR_GOSSIP_POWER_TOL', 1e-10, positive=True)
        self.power_max_iter = self._get_int_env('RUMOR_GOSSIP_POWER_MAX_ITER', 100000, minimum=1)
        self.oracle_max_nodes = self._get_int_env('RUMOR_GOSSIP_ORACLE_MAX_NODES', 10, minimum=2)

        # Output
        self.histogram_bins = self._get_int_env('RUMOR_GOSSIP_HISTOGRAM_BINS', 50, minimum=1)
        self.log_file: Optional[str] = os.getenv('RUMOR_GOSSIP_LOG_FILE') or None

    def _get_int_env(self, key: str, default: int, minimum: Optional[int] = None) -> int:
        """Get an integer environment variable or raise ConfigurationError."""
        raw = os.getenv(key)
        if raw is None or raw.strip() == '':
            return default
        try:
            value = int(raw)
        except ValueError:
            raise ConfigurationError(f"Environment variable '{key}' must be an integer, got {raw!r}")
        if minimum is not None and value < minimum:
            raise ConfigurationError(f"Environment variable '{key}' must be >= {minimum}, got {value}")
        return value

    def _get_float_env(self, key: str, default: float, positive: bool = False) -> float:
        """Get a float environment variable or raise ConfigurationError."""
        raw = os.getenv(key)
        if raw is None or raw.strip() == '':
            return default
        try:
            value = float(raw)
        except ValueError:
            raise ConfigurationError(f"Environment variable '{key}' must be a number, got {raw!r}")
        if not math.isfinite(value) or (positive and value <= 0):
            raise ConfigurationError(f"Environment variable '{key}' must be a positive number, got {raw!r}")
        return value

    def spread_budget(self, n: int) -> int:
        """Step cap for one spreading run: factor * n^2."""
        return self.spread_budget_factor * n * n

    def consensus_budget(self, n: int) -> int:
        """Round cap for one consensus run: factor * n * ln n."""
        return max(1, int(math.ceil(self.consensus_budget_factor * n * math.log(max(n, 2)))))


# Global config instance
config = SimulationConfig()
