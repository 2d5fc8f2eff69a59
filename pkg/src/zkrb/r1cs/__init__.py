"""Constraint-system builder and gadget library."""

from .gadgets import (
    gadget_boolean,
    gadget_hash2,
    gadget_merkle_verify,
    gadget_range_check,
    hash2_constraints,
    hash2_into,
    merkle_fold,
    merkle_level_constraints,
    synth_permute,
)
from .system import (
    ConstraintStats,
    ConstraintSystem,
    LinearCombination,
    Variable,
    Visibility,
    Witness,
    alloc,
    enforce,
    finalize,
    is_satisfied,
)

__all__ = [
    "ConstraintStats",
    "ConstraintSystem",
    "LinearCombination",
    "Variable",
    "Visibility",
    "Witness",
    "alloc",
    "enforce",
    "finalize",
    "gadget_boolean",
    "gadget_hash2",
    "gadget_merkle_verify",
    "gadget_range_check",
    "hash2_constraints",
    "hash2_into",
    "is_satisfied",
    "merkle_fold",
    "merkle_level_constraints",
    "synth_permute",
]
