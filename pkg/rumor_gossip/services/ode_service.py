"""Deterministic two-message model: RK4 integration, closed form i(s) and final reach."""
import math
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect

from ..config.settings import config
from ..exceptions import DegenerateSplitError, DomainError, InvalidInputError, InvalidThresholdError
from ..models.ode import REDUCED_COLUMNS, TWO_MESSAGE_COLUMNS, OdeState, Trajectory
from ..utils.validators import require_number

Field = Callable[[np.ndarray], np.ndarray]

_SIMPLEX_TOL = 1e-9
_ROOT_BRACKET = (1e-12, 1.0 - 1e-6)
_ROOT_XTOL = 1e-10


def _check_threshold(l: float) -> float:
    return require_number(l, "threshold l", minimum=1.0, error=InvalidThresholdError)


def _check_step(dt: Optional[float]) -> float:
    if dt is None:
        dt = config.ode_dt
    return require_number(dt, "dt", minimum=0.0, strict_minimum=True)


def rk4_integrate(field: Field, y0: Sequence[float], t_end: float, dt: float) -> Tuple[np.ndarray, np.ndarray]:
    """Classical fixed-step Runge-Kutta on an autonomous field.

    Returns (times, values) with times[k] = k * dt; the number of steps is
    round(t_end / dt) so the grid never drifts.
    """
    dt = require_number(dt, "dt", minimum=0.0, strict_minimum=True)
    t_end = require_number(t_end, "t_end", minimum=0.0)
    steps = int(round(t_end / dt))

    values = np.empty((steps + 1, len(y0)), dtype=float)
    y = np.asarray(y0, dtype=float)
    values[0] = y
    half = dt / 2.0
    for k in range(1, steps + 1):
        k1 = field(y)
        k2 = field(y + half * k1)
        k3 = field(y + half * k2)
        k4 = field(y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        values[k] = y
    return np.arange(steps + 1) * dt, values


def two_message_field(l: float) -> Field:
    """Right-hand side over (i1, i2, s, r1, r2); removal terms carry the 1/l factor."""
    rate = 1.0 / _check_threshold(l)

    def field(y: np.ndarray) -> np.ndarray:
        i1, i2, s = y[0], y[1], y[2]
        removal1 = rate * i1 * (1.0 - s)
        removal2 = rate * i2 * (1.0 - s)
        return np.array([
            i1 * s - removal1,
            i2 * s - removal2,
            -s * (i1 + i2),
            removal1,
            removal2,
        ])

    return field


def reduced_field(l: float) -> Field:
    """Right-hand side over (s, i, r) with i = i1 + i2."""
    rate = 1.0 / _check_threshold(l)

    def field(y: np.ndarray) -> np.ndarray:
        s, i = y[0], y[1]
        removal = rate * (1.0 - s) * i
        return np.array([-s * i, s * i - removal, removal])

    return field


def _check_simplex(values: Sequence[float], names: Sequence[str]) -> None:
    for name, value in zip(names, values):
        if not (-_SIMPLEX_TOL <= value <= 1.0 + _SIMPLEX_TOL):
            raise InvalidInputError(f"{name} = {value!r} is outside [0, 1]")
    if abs(sum(values) - 1.0) > _SIMPLEX_TOL:
        raise InvalidInputError(f"Initial fractions sum to {sum(values)!r}, expected 1")


def integrate_two_message(init: OdeState, l: float, t_end: float, dt: Optional[float] = None) -> Trajectory:
    """Integrate the five-class model from init up to t_end."""
    dt = _check_step(dt)
    _check_simplex(init.as_array(), TWO_MESSAGE_COLUMNS)
    times, values = rk4_integrate(two_message_field(l), init.as_array(), t_end, dt)
    return Trajectory(columns=TWO_MESSAGE_COLUMNS, times=init.t + times, values=values)


def integrate_reduced(s0: float, i0: float, l: float, dt: Optional[float] = None, t_end: float = 50.0) -> Trajectory:
    """Integrate (s, i, r) from (s0, i0, 1 - s0 - i0) up to t_end."""
    dt = _check_step(dt)
    s0 = require_number(s0, "s0", minimum=0.0, maximum=1.0)
    i0 = require_number(i0, "i0", minimum=0.0, maximum=1.0)
    if s0 + i0 > 1.0 + _SIMPLEX_TOL:
        raise InvalidInputError(f"s0 + i0 = {s0 + i0!r} exceeds 1")
    start = (s0, i0, max(0.0, 1.0 - s0 - i0))
    times, values = rk4_integrate(reduced_field(l), start, t_end, dt)
    return Trajectory(columns=REDUCED_COLUMNS, times=times, values=values)


def i_of_s(s: float, l: float) -> float:
    """Infective fraction as a function of the susceptible fraction, started from s = 1."""
    l = _check_threshold(l)
    if not s > 0 or s > 1:
        raise DomainError(f"i_of_s needs 0 < s <= 1, got {s!r}")
    return ((l + 1.0) / l) * (1.0 - s) + math.log(s) / l


def first_integral(s: float, i: float, l: float) -> float:
    """i - i_of_s(s, l); constant along any reduced trajectory."""
    return i - i_of_s(s, l)


def final_s(l: float) -> float:
    """Non-trivial root of s = exp(-(l + 1)(1 - s)), the fraction never reached."""
    l = _check_threshold(l)
    return float(bisect(lambda s: s - math.exp(-(l + 1.0) * (1.0 - s)),
                        _ROOT_BRACKET[0], _ROOT_BRACKET[1], xtol=_ROOT_XTOL))


def final_reach(l: float) -> float:
    """Fraction of nodes eventually informed, 1 - final_s(l)."""
    return 1.0 - final_s(l)


def proportional_split(n1_0: float, n2_0: float, total: float) -> Tuple[float, float]:
    """Share total between the messages in the ratio of their initial holders."""
    if n1_0 < 0 or n2_0 < 0 or total < 0:
        raise InvalidInputError(f"proportional_split needs non-negative inputs, got ({n1_0}, {n2_0}, {total})")
    if n1_0 + n2_0 <= 0:
        raise DegenerateSplitError("Cannot split between two messages with no initial holders")
    part1 = total * n1_0 / (n1_0 + n2_0)
    return part1, total - part1


def final_split(n1: float, n2: float, l: float) -> Tuple[float, float]:
    """Final removed fractions (r1, r2) predicted from the initial holders."""
    return proportional_split(n1, n2, final_reach(l))


def large_l_gap(l: float, grid: Optional[Sequence[float]] = None) -> float:
    """max |i_of_s(s, l) - (1 - s)| over grid (default: 81 points on [0.2, 1])."""
    grid = np.linspace(0.2, 1.0, 81) if grid is None else np.asarray(grid, dtype=float)
    return max(abs(i_of_s(float(s), l) - (1.0 - s)) for s in grid)
