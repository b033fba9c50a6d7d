"""Exact arithmetic and automorphisms of the semigroup B_Z^F."""

from .core import (
    ArithmeticOverflow,
    BZFError,
    Element,
    FamilySpec,
    InfiniteFrom,
    NotOmegaClosed,
    inv,
    is_idempotent,
    mul,
    validate_family,
)
from .aut import Automorphism, apply_aut, classify_group, compose_aut, invert_aut
from .kernels import BACKEND

__all__ = [
    "ArithmeticOverflow",
    "Automorphism",
    "BACKEND",
    "BZFError",
    "Element",
    "FamilySpec",
    "InfiniteFrom",
    "NotOmegaClosed",
    "apply_aut",
    "classify_group",
    "compose_aut",
    "inv",
    "invert_aut",
    "is_idempotent",
    "mul",
    "validate_family",
]

__version__ = "0.1.0"
