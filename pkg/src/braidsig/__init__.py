"""Braid-group proxy and designated-verifier signature schemes."""

from .braid import BraidWord, GroupParams, NormalForm, Subgroup, normal_form
from .conjugacy import ConjugacyLimits, Verdict, is_conjugate

__version__ = "0.1.0"

__all__ = [
    "BraidWord",
    "ConjugacyLimits",
    "GroupParams",
    "NormalForm",
    "Subgroup",
    "Verdict",
    "is_conjugate",
    "normal_form",
]
