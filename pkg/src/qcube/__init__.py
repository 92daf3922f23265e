"""Exact analysis of perfect 2-colorings and correlation-immune sets in Z_q^n."""

from .analysis import (
    AnalysisReport,
    ParameterMatrix,
    admissible_matrices,
    alpha,
    bf_bound,
    check_perfect_direct,
    check_perfect_spectral,
    density,
    eigenvalue,
    nei,
    theorem_eval,
)
from .constructions import hamming_code, mds_sum_code, random_subset, slab, subcube_bitrade, translate
from .cube import CubeShape, Face, VertexSet, enumerate_faces, neighbors, read_qset, write_qset
from .spectral import cor_by_faces, cor_spectral, count_vector, full_spectrum, weight_profile
from .structures import bitrade_order, is_bitrade, is_mds_distance2, mobile_and_components, oa_check

__version__ = "0.1.0"
