"""Packing and covering of non-null paths in group-labelled graphs."""
from .duality import DualityCertificate, hitting, packing
from .errors import (BudgetExceeded, ContractError, InvariantViolation, NonNullPathsError,
                     ScaleError, StructuralError, ValidationError)
from .graph import STGraph, Separation, load_graph, save_graph
from .groups import FiniteGroup, GroupElem, make_cyclic, make_product, make_symmetric
from .paths import GPath

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "ContractError", "DualityCertificate", "FiniteGroup", "GPath", "GroupElem",
    "InvariantViolation", "NonNullPathsError", "STGraph", "ScaleError", "Separation",
    "StructuralError", "ValidationError", "hitting", "load_graph", "make_cyclic", "make_product",
    "make_symmetric", "packing", "save_graph",
]
