"""Matched channels, decoding equivalence and Hamming-cube embeddings.

Thin wrapper around the C++ core. All rational quantities cross the
boundary as fractions.Fraction; matrices are lists of row lists; subsets of
{1..n} are bitmasks with bit i-1 standing for element i; symbols and points
are 0-indexed.
"""

from chanmatch._core import (
    AgreementReport,
    Certificate,
    Channel,
    DistanceMatrix,
    LinearEmbedding,
    MetrizationResult,
    OptimalEmbedding,
    OptimalPointEmbedding,
    OrderCone,
    PointEmbedding,
    RankClass,
    ScalingWitness,
    SetFamily,
    SubsetVector,
    VerifyReport,
    ball_family,
    cap_transform,
    check_certificate,
    check_realizable,
    classify_distance,
    cone_of,
    decoder_agreement_oracle,
    embed_points,
    embed_weight,
    embed_weight_with,
    exact_embed,
    matched,
    mdd_decode,
    metrize,
    minimize_dimension,
    minimize_dimension_points,
    minterm_vector,
    mld_decode,
    parse_channel,
    parse_distance,
    parse_weight,
    realize,
    same_weak_order,
    scale_shift,
    search_realization,
    solve_cap,
    solve_sym,
    sym_to_cap,
    sym_transform,
    to_metric,
    verify_point_embedding,
    verify_weight_embedding,
    weak_order,
    weight_to_distance,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
