"""
Exact polynomial-coefficient recurrences: term generation, duality,
recurrence guessing and irrationality diagnostics.
"""
from cellular.recurrences.models import LinearFormSpec, PolyRecurrence, RationalSequence, RecurrenceError
from cellular.recurrences.recurrence import (
    NAMED_FAMILIES,
    AperyFamily,
    apery_zeta2,
    apery_zeta3,
    dual,
    extend,
    hadamard,
    is_self_dual,
)
from cellular.recurrences.discover import annihilates, discover, required_terms
from cellular.recurrences.diagnostics import DiagnosticsReport, diagnostics, lcm_upto

__all__ = [
    "LinearFormSpec",
    "PolyRecurrence",
    "RationalSequence",
    "RecurrenceError",
    "NAMED_FAMILIES",
    "AperyFamily",
    "apery_zeta2",
    "apery_zeta3",
    "dual",
    "extend",
    "hadamard",
    "is_self_dual",
    "annihilates",
    "discover",
    "required_terms",
    "DiagnosticsReport",
    "diagnostics",
    "lcm_upto",
]
