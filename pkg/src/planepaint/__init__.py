"""Derived graphs of plane graphs, graph-polynomial coefficients, Alon-Tarsi
numbers and paintability, with executable verification suites."""

from .derive import DerivedGraph, combine
from .embedding import Element, PlaneGraph, from_rotation_system, load_json, read_planar_code
from .errors import (
    BudgetExceeded,
    EmbeddingError,
    FaceNotSimpleCycle,
    HypothesisNotMet,
    PlanePaintError,
    SizeLimitExceeded,
)
from .paint import is_paintable, paint_number
from .polynomial import alon_tarsi_number, coefficient, truncated_expansion

__all__ = [
    "BudgetExceeded", "DerivedGraph", "Element", "EmbeddingError", "FaceNotSimpleCycle",
    "HypothesisNotMet", "PlaneGraph", "PlanePaintError", "SizeLimitExceeded",
    "alon_tarsi_number", "coefficient", "combine", "from_rotation_system", "is_paintable",
    "load_json", "paint_number", "read_planar_code", "truncated_expansion",
]
