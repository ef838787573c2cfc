"""Generalized-PSK unitary space-time constellations.

Construction of the O / V1 / V2 / V3 / V4 families and their real
orthogonal-design lifts, diversity-product verification, differential
encoding and decoding (exhaustive and fast shell decoders), error bounds,
and a reproducible Monte-Carlo block-error simulator.
"""

from .analysis import (DiversityReport, diversity_product, pairwise_bound,
                       rate, union_bound_bler, v1_analytic_dp, v1_dp_terms,
                       v2_analytic_dp, v2_dp_terms, v3_analytic_dp)
from .constellations import (Constellation, GpskClass, PskRing, RealShell,
                             build_diag3, build_o, build_real8_product,
                             build_v1, build_v2, build_v3, build_v4,
                             design_basis, from_json, lift_real4, real4_design,
                             real8_design, to_json, v1_root, v2_r,
                             v3_shell_counts)
from .decoders import (DecodeResult, b_map, b_map8, decode_coherent,
                       decode_exhaustive_diff, decode_fast_real4,
                       decode_fast_su2, decode_fast_v4,
                       decode_noncoherent_glrt, exhaustive_batch,
                       fast_real4_batch, fast_su2_batch, fast_v4_batch,
                       psk_index, round_half_up)
from .linalg import determinant, frobenius_norm, is_unitary, singular_values
from .simulate import (BlerPoint, SimConfig, differential_encode, run_bler,
                       sample_fading, transmit_block)

__version__ = "0.1.0"

__all__ = [
    "PskRing", "GpskClass", "RealShell", "Constellation",
    "build_o", "build_v1", "build_v2", "build_v3", "build_v4", "build_diag3",
    "lift_real4", "build_real8_product", "real4_design", "real8_design",
    "design_basis", "v1_root", "v2_r", "v3_shell_counts",
    "to_json", "from_json",
    "DiversityReport", "diversity_product", "rate",
    "v1_dp_terms", "v1_analytic_dp", "v2_dp_terms", "v2_analytic_dp",
    "v3_analytic_dp", "pairwise_bound", "union_bound_bler",
    "DecodeResult", "round_half_up", "psk_index", "b_map", "b_map8",
    "decode_exhaustive_diff", "decode_fast_su2", "decode_fast_real4",
    "decode_fast_v4", "decode_coherent", "decode_noncoherent_glrt",
    "exhaustive_batch", "fast_su2_batch", "fast_real4_batch", "fast_v4_batch",
    "SimConfig", "BlerPoint", "sample_fading", "differential_encode",
    "transmit_block", "run_bler",
    "determinant", "singular_values", "frobenius_norm", "is_unitary",
]
