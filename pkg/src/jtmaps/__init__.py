"""Jordan triple endomorphisms of 2x2 positive definite matrices and
sequential endomorphisms of 2x2 effects: canonical forms, black-box
classification, spin transport and identity checks."""

from . import errors
from .canonical import B1, B2, B3, apply, compose, gauge_equal, is_automorphism, jordan_triple
from .classify import ClassifyDiagnostics, ClassifyResult, classify_jte, classify_linear_map, explain
from .effects import (D1, D2, D3, D4, RankOneImage, SeqZero, apply_seq, check_seq, classify_seq,
                      commute_iff_seq_commute, extend_to_cone, order_leq, seq_factor,
                      seq_gauge_equal, seq_product)
from .linearize import LinMapH2, check_jte, check_linearity, extract_f, linearize
from .mat2 import DEFAULT_TOL, PAULI, Tolerances
from .proofcheck import gh_independence_det, run_identities
from .spin import so3_to_su2, su2_to_so3

__version__ = "0.1.0"

__all__ = [
    "errors", "B1", "B2", "B3", "apply", "compose", "gauge_equal", "is_automorphism", "jordan_triple",
    "ClassifyDiagnostics", "ClassifyResult", "classify_jte", "classify_linear_map", "explain",
    "D1", "D2", "D3", "D4", "RankOneImage", "SeqZero", "apply_seq", "check_seq", "classify_seq",
    "commute_iff_seq_commute", "extend_to_cone", "order_leq", "seq_factor", "seq_gauge_equal",
    "seq_product", "LinMapH2", "check_jte", "check_linearity", "extract_f", "linearize",
    "DEFAULT_TOL", "PAULI", "Tolerances", "gh_independence_det", "run_identities",
    "so3_to_su2", "su2_to_so3",
]
