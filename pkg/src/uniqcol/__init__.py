"""Unique colourings of Erdős–Rényi random graphs: generators, verifiers,
constructive strategies, exact solvers, bounds and Monte Carlo sweeps."""

from .colouring import (INFINITY, Colouring, is_eta_injective, is_proper, is_r_unique,
                        is_tree_unique, profile)
from .graph import GenParams, Graph, degree, generate, neighbourhood
from .patterns import TreePattern, contains_copy, enumerate_copies, parse_pattern

__version__ = "0.1.0"

__all__ = [
    "INFINITY", "Colouring", "GenParams", "Graph", "TreePattern", "contains_copy",
    "degree", "enumerate_copies", "generate", "is_eta_injective", "is_proper",
    "is_r_unique", "is_tree_unique", "neighbourhood", "parse_pattern", "profile",
]
