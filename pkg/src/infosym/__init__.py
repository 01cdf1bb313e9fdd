"""Symmetry detection for Boolean functions using entropy measures on ROBDDs."""

__version__ = "0.1.0"

from .bdd import DEFAULT_BACKEND, FuncHandle, Manager, TruthTable, new_manager  # noqa: E402
from .entropy import EntropyProfile, cond_entropy, cond_entropy_set, profile  # noqa: E402
from .symmetry import (  # noqa: E402
    PairClassification,
    SymmetryKind,
    SymmetryReport,
    Totality,
    classify_pair,
    detect,
    detect_circuit,
)

__all__ = [
    "DEFAULT_BACKEND",
    "EntropyProfile",
    "FuncHandle",
    "Manager",
    "PairClassification",
    "SymmetryKind",
    "SymmetryReport",
    "Totality",
    "TruthTable",
    "classify_pair",
    "cond_entropy",
    "cond_entropy_set",
    "detect",
    "detect_circuit",
    "new_manager",
    "profile",
]
