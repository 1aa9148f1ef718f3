"""Design and circuit-level verification of decoupling and matching networks for compact dipole arrays."""

from .array_model import ArrayGeometry, array_impedance, structured_matrix
from .dmn_core import design_dmn_le, extract_branches, lumped_netlist, synthesize_zmt
from .ndm import design_ndm, ndm_netlist, ndm_solve, verify_matching
from .ring_hybrid import design_ring, design_ring_hybrid, ring_netlist

__version__ = "0.1.0"

__all__ = [
    "ArrayGeometry",
    "array_impedance",
    "design_dmn_le",
    "design_ndm",
    "design_ring",
    "design_ring_hybrid",
    "extract_branches",
    "lumped_netlist",
    "ndm_netlist",
    "ndm_solve",
    "ring_netlist",
    "structured_matrix",
    "synthesize_zmt",
    "verify_matching",
]
