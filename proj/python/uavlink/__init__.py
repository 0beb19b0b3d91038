"""Python bindings for the uavlink C++ core."""

from pathlib import Path

from ._core import *  # noqa: F401,F403
from ._core import (
    load_nodes,
    load_obstacles,
    load_run_config,
    load_waypoints,
    simulate,
)

__version__ = "0.1.0"


def simulate_config(path):
    """Load a run configuration file and replay it, like `uavlink simulate`."""
    cfg = load_run_config(Path(path))
    proj = cfg.settings.projection
    nodes = load_nodes(Path(cfg.nodes_path).read_text(), proj)
    obstacles = []
    if cfg.obstacles_path is not None:
        obstacles = load_obstacles(Path(cfg.obstacles_path).read_text(), proj)
    waypoints = load_waypoints(Path(cfg.waypoints_path).read_text())
    return simulate(waypoints, nodes, obstacles, cfg.settings)
