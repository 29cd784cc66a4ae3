"""Finite systems of residue classes: m-covers, m-systems and their certificates."""

from .systems import (
    Classification,
    CoveringProfile,
    ResidueClass,
    System,
    check_duality,
    classify,
    covering_profile,
    dual,
)
from .textio import format_system, parse_system

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "CoveringProfile",
    "ResidueClass",
    "System",
    "check_duality",
    "classify",
    "covering_profile",
    "dual",
    "format_system",
    "parse_system",
]
