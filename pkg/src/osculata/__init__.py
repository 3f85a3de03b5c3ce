"""Exact computation of osculating spaces, fundamental forms, and contact
invariants for polynomially parametrized projective varieties, with a CLI
for spec generation, point analysis, and corpus-wide theorem audits."""

__version__ = "0.1.0"

from .errors import (
    InternalInvariantError,
    OsculataError,
    PointError,
    SpecError,
    StabilizationNotReached,
)
from .polyjet import (
    MultiIndex,
    MultiPoly,
    Rational,
    directional_derivative,
    evaluate,
    hasse_derivative,
    index_sort_key,
    indices_of_degree,
    indices_up_to,
    taylor_shift,
)
from .linalg import (
    Subspace,
    annihilator,
    intersection_dim,
    matrix_rank,
    quotient_reduce,
    row_space,
    subspace_sum,
)
from .variety import (
    ChartPoint,
    VarietySpec,
    builtin_corpus,
    canonical_spec_json,
    gen_cone,
    gen_projection,
    gen_rnc,
    gen_segre,
    gen_veronese,
    parse_polynomial,
    parse_spec,
    plane_in_p4,
    poly_to_string,
    spec_digest,
    validate_point,
)
from .jets import JetTable, OsculatingTower, jet_table, osculating_tower, stabilization
from .forms import (
    FormSystem,
    SymmetricForm,
    conormal_basis,
    evaluate_form,
    form_rank,
    fundamental_form_system,
    polarize,
    symmetric_form,
)
from .invariants import (
    InvariantReport,
    Sampled,
    SamplerConfig,
    SecantResult,
    TangentResult,
    build_invariant_report,
    cor_p09_consistency,
    cor_tm06_check,
    cor_tm07_check,
    delta_k,
    f_map_direction,
    sample_point,
    secant_dim_terracini,
    tangent_rank,
    tangent_variety_dim,
    theta_k,
    vanishing_check,
)
