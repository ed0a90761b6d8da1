"""Explicit avoiders of [k,1]-flats in F_2^n built from binary codes, hypergraphs and
flat algebra, with exhaustive verifiers."""

from .codes import (
    AffineCode,
    LinearCode,
    WeightEnumerator,
    check_value_count_bounds,
    contains,
    dual,
    enumerate_all_codes,
    evaluate,
    macwilliams_transform,
    weight_enumerator,
)
from .constructions import (
    Hypergraph,
    SignatureContext,
    affine_code_based_set,
    code_based_set,
    count_independent_sets,
    flats_avoider,
    hypergraph_set,
    predicted_size,
    signature,
)
from .geometry import (
    BudgetExceeded,
    Flat,
    PointSet,
    complement,
    count_flats,
    enumerate_flats,
    flat_points,
    is_avoider,
    is_evasive,
    profile,
    symmetric_difference,
    union,
)
from .gf2core import BitMatrix, BitVector, gaussian_binomial, matvec, nullspace_basis, rank, rref
from .spectrum import exists_avoider_of_size, spectrum_exhaustive
from .transforms import (
    Mat2,
    TransformWord,
    VPair,
    apply_word,
    check_free_distinctness,
    distinct_sizes,
    pad_zero,
    pingpong_region_check,
    size_lower_bound,
    transform_a,
    transform_b,
    v_of_code,
    word_matrix,
)

__version__ = "0.1.0"
