"""Syzygy range predictions and certified Koszul dimension tables."""

from .geometry import (
    GLOBALLY_GENERATED_ONLY,
    NOT_GLOBALLY_GENERATED,
    VERY_AMPLE,
    Variety,
    binom,
    canonical_class,
    format_class,
    format_variety,
    grassmannian24,
    h0,
    parse_class,
    parse_variety,
    positivity,
    product_space,
    projective_space,
)
from .bounds import (
    Decomposition,
    DualTwist,
    RangePrediction,
    Setup,
    SetupError,
    adapted_ci,
    closed_form_range_gr24,
    closed_form_range_pn,
    closed_form_range_product,
    decompose,
    dual_twist,
    effective_conditions,
    phi,
    predict_range,
    validate_setup,
)
from .exactalg import (
    AGREED,
    DEFAULT_FIELDS,
    DEFAULT_P1,
    DEFAULT_P2,
    PRIME_SENSITIVE,
    PrimeField,
    RankOptions,
    SparseMatrix,
    certified_rank,
    dump_matrix,
    load_matrix,
    multiply,
    rank,
)
from .koszul import (
    BettiTable,
    DualityReport,
    KpqCell,
    ModelError,
    SizeCapExceeded,
    VerificationReport,
    antidiagonal_euler,
    betti_table,
    composite_is_zero,
    duality_check,
    iter_subsets_colex,
    koszul_differential,
    kpq_dim,
    monomial_basis,
    render_betti,
    subset_colex_rank,
    verify,
)

__version__ = "0.1.0"
