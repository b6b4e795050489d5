"""MDPC codes from the lines and projective bundles of Desarguesian planes."""

from ._backend import BACKEND
from .binmat import BitMatrix, BitVector, kernel_basis, rank_gf2
from .code import (
    MdpcCode,
    SupportClass,
    build_code,
    classify_support,
    descriptor,
    dimension,
    min_distance_exhaustive,
    min_weight_at_most,
    min_weight_codewords,
    predicted_dimension,
)
from .decoder import DecodeReport, DecoderConfig, bit_flip_round, decode, exhaustive_radius_check, guaranteed_radius
from .errors import BundleMdpcError, DomainError, ResourceError, SearchFailure, ShapeError, StructureError
from .geometry import BlockSystem, DifferenceSet, bundle, plane, singer_difference_set
from .gf import FiniteField, find_primitive_polynomial
from .sim import ExperimentSpec, SimReport, run_experiment

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BitMatrix",
    "BitVector",
    "BlockSystem",
    "BundleMdpcError",
    "DecodeReport",
    "DecoderConfig",
    "DifferenceSet",
    "DomainError",
    "ExperimentSpec",
    "FiniteField",
    "MdpcCode",
    "ResourceError",
    "SearchFailure",
    "ShapeError",
    "SimReport",
    "StructureError",
    "SupportClass",
    "bit_flip_round",
    "build_code",
    "bundle",
    "classify_support",
    "decode",
    "descriptor",
    "dimension",
    "exhaustive_radius_check",
    "find_primitive_polynomial",
    "guaranteed_radius",
    "kernel_basis",
    "min_distance_exhaustive",
    "min_weight_at_most",
    "min_weight_codewords",
    "plane",
    "predicted_dimension",
    "rank_gf2",
    "run_experiment",
    "singer_difference_set",
]
