"""Sandwich full flag codes over F_q^n: construction, brute-force
verification, and erasure-channel decoding."""

from .construction import (
    Flag,
    FlagCode,
    SandwichParams,
    build_code,
    code_from_json,
    code_to_json,
    companion_matrix,
    field_power,
    find_primitive_poly,
    layer_A,
    layer_B,
    layer_S,
    matrix_order,
)
from .decoder import (
    DecodeOutcome,
    ReceivedSequence,
    SimulationReport,
    accumulate,
    correctable_budget,
    decode,
    erase,
    error_count,
    simulate,
)
from .fields import FiniteField, field_new
from .linalg import (
    MatrixFq,
    Subspace,
    contains,
    enumerate_subspaces,
    gaussian_binomial,
    intersect_dim,
    rank,
    rowspace,
    rref,
    sum_dim,
)
from .metrics import (
    CodeReport,
    aq_exact,
    classify,
    flag_distance,
    max_distance,
    min_flag_distance,
    partial_spread_bound,
    projected_code,
    projected_min_distance,
    subspace_distance,
)
from .verify import verify_code

__all__ = [
    "Flag",
    "FlagCode",
    "SandwichParams",
    "build_code",
    "code_from_json",
    "code_to_json",
    "companion_matrix",
    "field_power",
    "find_primitive_poly",
    "layer_A",
    "layer_B",
    "layer_S",
    "matrix_order",
    "DecodeOutcome",
    "ReceivedSequence",
    "SimulationReport",
    "accumulate",
    "correctable_budget",
    "decode",
    "erase",
    "error_count",
    "simulate",
    "FiniteField",
    "field_new",
    "MatrixFq",
    "Subspace",
    "contains",
    "enumerate_subspaces",
    "gaussian_binomial",
    "intersect_dim",
    "rank",
    "rowspace",
    "rref",
    "sum_dim",
    "CodeReport",
    "aq_exact",
    "classify",
    "flag_distance",
    "max_distance",
    "min_flag_distance",
    "partial_spread_bound",
    "projected_code",
    "projected_min_distance",
    "subspace_distance",
    "verify_code",
]
