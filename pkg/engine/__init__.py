from .oracle import simulate_ticks
from .simulator import simulate
from .sweep import grid_points, simulate_sweep

__all__ = ["grid_points", "simulate", "simulate_sweep", "simulate_ticks"]
