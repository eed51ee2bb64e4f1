"""Exact small-graph invariants, 2-factor search and exhaustive verification campaigns."""

from .graph import Graph, from_graph6, to_graph6
from .invariants import independence_number, vertex_connectivity
from .twofactor import TwoFactorCertificate, find_two_factor, validate_certificate

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "TwoFactorCertificate",
    "find_two_factor",
    "from_graph6",
    "independence_number",
    "to_graph6",
    "validate_certificate",
    "vertex_connectivity",
]
