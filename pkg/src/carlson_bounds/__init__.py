"""Certified arccos bounds from Carlson-type inequality families.

Modules: oracle (high-precision and float64 arccos), family (the monotone
family and proof-chain functions), classifier (monotonicity regions and
envelope extrema), bounds (certified intervals and the approximation),
verifier (the check harness), cli (command-line front end).
"""

from .bounds import (
    BoundFamily,
    BoundInterval,
    approx_arccos,
    best_envelope,
    bound_table,
    carlson,
    family_bounds,
    thm2,
    thm2_maxcoef,
    thm2_mincoef,
    thm2_reversed,
    thm3,
)
from .classifier import (
    ExtremaReport,
    RegionClass,
    classify_numeric,
    classify_symbolic,
    critical_point_g,
    extrema_points,
    necessary_increasing,
)
from .family import EvalPoint, Params
from .oracle import HPValue, arccos_hp, arccos_stable, const_hp
from .verifier import (
    VerificationReport,
    check_class,
    check_double_inequality,
    check_identities,
    check_sharpness,
    check_sign_chain,
    default_suite,
)

__version__ = "0.1.0"
