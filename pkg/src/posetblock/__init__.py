"""Linear isometry groups of weighted-coordinates poset block metric spaces over GF(q)."""

from .codes import Equivalence, LinearCode, are_equivalent, min_distance
from .errors import PosetBlockError
from .field import FieldSpec, Matrix, enumerate_matrices, make_field, mat_inverse, mat_mul
from .isometry import (
    Decomposition,
    build_t_psi,
    decompose,
    enumerate_block_isometries,
    enumerate_group,
    group_order,
    in_triangular_group,
    is_isometry_exhaustive,
    oracle_group,
    phi_of,
)
from .poset import LabelMap, Poset, PosetAutomorphism, enumerate_automorphisms
from .space import BlockVector, SpaceSpec, pi_support, pwpi_distance, pwpi_weight
from .weight import (
    WeightFunction,
    block_weight,
    hamming_scalar_factor,
    hamming_weight,
    lee_weight,
    make_weight,
)

__all__ = [
    "BlockVector", "Decomposition", "Equivalence", "FieldSpec", "LabelMap", "LinearCode",
    "Matrix", "Poset", "PosetAutomorphism", "PosetBlockError", "SpaceSpec", "WeightFunction",
    "are_equivalent", "block_weight", "build_t_psi", "decompose", "enumerate_automorphisms",
    "enumerate_block_isometries", "enumerate_group", "enumerate_matrices", "group_order",
    "hamming_scalar_factor", "hamming_weight", "in_triangular_group", "is_isometry_exhaustive",
    "lee_weight", "make_field", "make_weight", "mat_inverse", "mat_mul", "min_distance",
    "oracle_group", "phi_of", "pi_support", "pwpi_distance", "pwpi_weight",
]
