"""Certified evaluation of the main inequality and everything derived from it.

All comparisons go through guaranteed enclosures so that verdicts are
rigorous even at astronomically large thresholds.
"""

from ..enclosure import (
    CertifiedReal,
    enclose,
    pow_frac,
    set_precision,
    working_precision,
)
from .bounds import (
    BURGESS_C,
    BoundComparison,
    BoundValue,
    bound_sieved,
    bound_log_free,
    burgess_comparison_bound,
    compare_with_burgess,
    sieve_factor,
)
from .cases import CaseReport, case_engine, worst_case_delta
from .search import (
    OptimizeResult,
    SoundnessReport,
    ThresholdOptimizeResult,
    optimize_params,
    optimize_threshold,
    soundness_crosscheck,
)
from .certifier import (
    BurgessParams,
    Certificate,
    PowerShape,
    SieveSummary,
    Threshold,
    certify_bound,
)
from .winchain import (
    ChainReport,
    win_chain_sieved_derive,
    win_chain_derive,
    win_chain_sweep,
)

__all__ = [
    "BURGESS_C",
    "BoundComparison",
    "BoundValue",
    "BurgessParams",
    "CaseReport",
    "Certificate",
    "CertifiedReal",
    "ChainReport",
    "OptimizeResult",
    "PowerShape",
    "SieveSummary",
    "SoundnessReport",
    "Threshold",
    "ThresholdOptimizeResult",
    "bound_sieved",
    "bound_log_free",
    "burgess_comparison_bound",
    "compare_with_burgess",
    "case_engine",
    "enclose",
    "optimize_params",
    "optimize_threshold",
    "pow_frac",
    "set_precision",
    "sieve_factor",
    "soundness_crosscheck",
    "certify_bound",
    "win_chain_sieved_derive",
    "win_chain_derive",
    "win_chain_sweep",
    "working_precision",
    "worst_case_delta",
]
