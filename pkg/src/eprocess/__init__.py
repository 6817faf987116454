"""Simulation and verification tools for the E-process, a random walk that
prefers unvisited edges."""
from .graph import Graph, build, contract, girth, is_connected, all_even_degree
from .processes import run, run_directed, simple_walk

__all__ = [
    "Graph",
    "build",
    "contract",
    "girth",
    "is_connected",
    "all_even_degree",
    "run",
    "run_directed",
    "simple_walk",
]
