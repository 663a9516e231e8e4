"""Spatially coupled LDPC codes under burst erasures.

Construct coupled base matrices, split their diagonal band with a
block-interleaver column permutation, lift to full parity-check
matrices, and measure or bound the maximal correctable burst length
with the peeling decoder, stopping-set analysis, and density
evolution.
"""

from .construct import (
    CodeParams,
    LiftSpec,
    LIFT_STYLES,
    PRNG_ALGORITHM,
    build_base_matrix,
    design_rate,
    lift,
)
from .decode import BurstReport, DecodeResult, burst_correctable, compute_wmax, peel
from .experiments import (
    ExperimentConfig,
    derive_seed,
    run_histogram,
    run_lambda_vs_l,
    run_verify_bounds,
    write_records,
)
from .gf2 import (
    AlistParseError,
    BinaryMatrix,
    SparseParityCheck,
    read_alist,
    read_dense_csv,
    row_weights,
    submatrix_columns,
    write_alist,
    write_dense_csv,
)
from .permute import (
    Permutation,
    apply_columns,
    band_splitting_permutation,
    format_permutation,
    map_index_set,
    parse_permutation,
    random_permutation,
)
from .stopping import (
    BoundInterval,
    CapacityError,
    EXHAUSTIVE_LIMIT,
    StoppingSet,
    block_members,
    burst_ratio_interval,
    enumerate_irreducible,
    has_stopping_subset,
    irreducible_sc_characterization,
    is_stopping_set,
    lift_burst_interval,
    span_of,
)
from .threshold import (
    ThresholdResult,
    bp_threshold,
    de_iterate,
    regular_bp_threshold,
)

__version__ = "0.1.0"

__all__ = [
    "AlistParseError",
    "BinaryMatrix",
    "BoundInterval",
    "BurstReport",
    "CapacityError",
    "CodeParams",
    "DecodeResult",
    "EXHAUSTIVE_LIMIT",
    "ExperimentConfig",
    "LIFT_STYLES",
    "LiftSpec",
    "PRNG_ALGORITHM",
    "Permutation",
    "SparseParityCheck",
    "StoppingSet",
    "ThresholdResult",
    "apply_columns",
    "band_splitting_permutation",
    "block_members",
    "bp_threshold",
    "build_base_matrix",
    "burst_correctable",
    "burst_ratio_interval",
    "compute_wmax",
    "de_iterate",
    "derive_seed",
    "design_rate",
    "enumerate_irreducible",
    "format_permutation",
    "has_stopping_subset",
    "irreducible_sc_characterization",
    "is_stopping_set",
    "lift",
    "lift_burst_interval",
    "map_index_set",
    "parse_permutation",
    "peel",
    "random_permutation",
    "read_alist",
    "read_dense_csv",
    "regular_bp_threshold",
    "row_weights",
    "run_histogram",
    "run_lambda_vs_l",
    "run_verify_bounds",
    "span_of",
    "submatrix_columns",
    "write_alist",
    "write_dense_csv",
    "write_records",
]
