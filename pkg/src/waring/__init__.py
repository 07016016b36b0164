"""Waring numbers g_{p,e}(k) of the rings Z_p[p^(1/e)]."""

from .engine import (
    Decomposition,
    LowerBoundCertificate,
    RingTooLarge,
    WaringResult,
    anchored_upper_bounds,
    decomposition_table,
    global_upper_bound,
    lower_bound,
    min_counts,
    scan_conjecture,
    waring_number,
)
from .powers import PrecisionTooLow, attainable_set, enumerate_unit_residues, full_summand_set
from .primefield import NotApplicable, delegate_unramified, g0
from .ring import Element, RingSpec

__all__ = [
    "Decomposition", "Element", "LowerBoundCertificate", "NotApplicable", "PrecisionTooLow",
    "RingSpec", "RingTooLarge", "WaringResult", "anchored_upper_bounds", "attainable_set",
    "decomposition_table", "delegate_unramified", "enumerate_unit_residues", "full_summand_set",
    "g0", "global_upper_bound", "lower_bound", "min_counts", "scan_conjecture", "waring_number",
]
