"""Constructive pipeline from a generating set to a verified hamiltonian cycle."""

from .arithmetic import contains_n2_sequence, gcd_consecutive_index
from .base_case import (
    BaseCaseParams,
    arranged_params,
    base_case_alpha2,
    m3_r3_words,
    general_family_word,
    m3_family_word,
    two_gen_even_cycle,
)
from .certificate import AlphaCertificate
from .context import FrattiniReduction, ProofContext, frattini_reduce, minimal_generating_subset
from .driver import HamiltonianResult, abelian_cycle, build_hamiltonian_cycle, fgl_lift
from .gluing import glue_family, snake_cycle
from .induction import (
    Arrangement,
    arrange_generators,
    bridge_ell3,
    certify_top,
    extract_generating_cycle,
    induction_step,
)

__all__ = [
    "AlphaCertificate",
    "Arrangement",
    "BaseCaseParams",
    "FrattiniReduction",
    "HamiltonianResult",
    "ProofContext",
    "abelian_cycle",
    "arrange_generators",
    "arranged_params",
    "base_case_alpha2",
    "bridge_ell3",
    "build_hamiltonian_cycle",
    "certify_top",
    "contains_n2_sequence",
    "extract_generating_cycle",
    "fgl_lift",
    "m3_r3_words",
    "frattini_reduce",
    "gcd_consecutive_index",
    "general_family_word",
    "glue_family",
    "induction_step",
    "m3_family_word",
    "minimal_generating_subset",
    "snake_cycle",
    "two_gen_even_cycle",
]
