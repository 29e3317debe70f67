"""Exact derivation spaces of evolution algebras attached to graphs."""

from .algebra import (
    AlgebraElement,
    EvolutionAlgebra,
    apply_linear,
    is_derivation_conditions,
    is_derivation_leibniz,
    multiply,
)
from .field import FieldSpec, Matrix, nullspace, rank, scalar_from_int
from .graph import Graph, GraphFormatError, TwinPartition, parse_graph, twin_partition
from .solver import DerivationSpace, SizeCapError, build_system, derivation_space, membership
from .theory import Prediction, PredictionKind, PreconditionError, predict

__all__ = [
    "AlgebraElement",
    "DerivationSpace",
    "EvolutionAlgebra",
    "FieldSpec",
    "Graph",
    "GraphFormatError",
    "Matrix",
    "PreconditionError",
    "Prediction",
    "PredictionKind",
    "SizeCapError",
    "TwinPartition",
    "apply_linear",
    "build_system",
    "derivation_space",
    "is_derivation_conditions",
    "is_derivation_leibniz",
    "membership",
    "multiply",
    "nullspace",
    "parse_graph",
    "predict",
    "rank",
    "scalar_from_int",
    "twin_partition",
]

__version__ = "0.1.0"
