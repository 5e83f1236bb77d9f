"""Finite-model kernel for relation extensions, product-space closures and Vietoris hyperspaces."""

from .errors import (
    DimensionError,
    FormatError,
    InvariantViolation,
    PreconditionError,
    SizeError,
    UltrarelError,
    ValidationError,
)
from .extensions import FilterRel, star_filter, star_ultra, tilde_filter, tilde_ultra
from .filters_hyper import FilterGen, HyperSpace, hyperspace, parse_filter, principal
from .rel_core import Rel, max_n
from .sections_closures import ProductRel, lcl, rcl
from .topo import ProductSpace, Topology, discrete, enumerate_topologies, indiscrete, make_topology, sierpinski

__version__ = "0.1.0"

__all__ = [
    "DimensionError", "FormatError", "InvariantViolation", "PreconditionError", "SizeError",
    "UltrarelError", "ValidationError", "FilterRel", "star_filter", "star_ultra", "tilde_filter",
    "tilde_ultra", "FilterGen", "HyperSpace", "hyperspace", "parse_filter", "principal", "Rel",
    "max_n", "ProductRel", "lcl", "rcl", "ProductSpace", "Topology", "discrete",
    "enumerate_topologies", "indiscrete", "make_topology", "sierpinski",
]
