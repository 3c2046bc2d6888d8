"""Hamiltonian cycles in Cayley graphs of nilpotent groups with cyclic commutator subgroup."""

from .builder import build_hamiltonian_cycle
from .catalog import build as catalog_entry
from .errors import (
    BudgetExhausted,
    CaseError,
    ContractViolation,
    HamCayleyError,
    HypothesisViolation,
    InvariantFailure,
    ParseError,
    ResourceError,
)
from .group_core import FiniteGroup, generate_group, group_from_table
from .oracle import verify_cycle

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted",
    "CaseError",
    "ContractViolation",
    "FiniteGroup",
    "HamCayleyError",
    "HypothesisViolation",
    "InvariantFailure",
    "ParseError",
    "ResourceError",
    "build_hamiltonian_cycle",
    "catalog_entry",
    "generate_group",
    "group_from_table",
    "verify_cycle",
]
