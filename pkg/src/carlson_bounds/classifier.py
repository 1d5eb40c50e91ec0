"""Monotonicity/extremum classification of the family f(a,b) on (0,1).

Two classifiers are provided.  classify_symbolic applies the closed-form
region conditions verbatim, in their published order.  classify_numeric
reconstructs the class from computed signs: g' is strictly increasing from
a-b-4/pi**2 (at 0+) to a-b-1/3 (at 1-), so g is monotone or has a unique
interior minimum, and the signs of g(0), g(1-) and that minimum decide how
many times g (hence f') crosses zero.

Known discrepancy, documented here because it is easy to trip over: the
closed-form max-then-min condition (window 1/3 < a-b < 4/pi**2, a > 1/2,
2/pi < a+b < 2(a-b)**1.5/sqrt(4(a-b)-1)) is too wide.  The threshold
2(a-b)**1.5/sqrt(4(a-b)-1) only bounds min g from below, so inside a thin
strip below it min g is still positive and f is strictly increasing (for
example (a, b) = (0.52, 0.13)).  classify_symbolic applies the condition
as stated; classify_numeric is authoritative in that strip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from mpmath import mp, mpf

from . import family
from .family import EvalPoint, Params
from .oracle import hp_context

TWO_OVER_PI = 2.0 / math.pi
FOUR_OVER_PI_SQ = 4.0 / math.pi**2
ONE_THIRD = 1.0 / 3.0

# a double whose 50-digit re-evaluation is still below this is an exact zero
# of the condition expression (e.g. 2a-1 at a = 0.5)
_HP_ZERO = mpf("1e-30")


class RegionClass(Enum):
    STRICTLY_DECREASING = "StrictlyDecreasing"
    STRICTLY_INCREASING = "StrictlyIncreasing"
    UNIQUE_MAX = "UniqueMax"
    UNIQUE_MIN = "UniqueMin"
    MAX_THEN_MIN = "MaxThenMin"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class ExtremaReport:
    """Discriminant forms, envelope extremum locations and coefficient bounds.

    disc_closed is 16ab(b-a) + (a+b)**2; disc_quadratic is the discriminant
    of the envelope-derivative quadratic
    (a-b)**2 x**2 + (a+b)(2a-2b-1) x + (a+b)**2 - a + b
    computed from its coefficients.  The two agree identically in exact
    arithmetic.  x1 <= x2 are the quadratic's roots when they exist;
    max_coeff/min_coeff are the envelope values there when the root lies in
    (0,1).
    """

    disc_closed: float
    disc_quadratic: float
    x1: float | None
    x2: float | None
    max_coeff: float | None
    min_coeff: float | None


def increasing_threshold(d: float) -> float:
    """Threshold 2*d**1.5/sqrt(4d-1) on a+b; above it min g >= 0. Needs d > 1/4."""
    if 4.0 * d - 1.0 <= 0.0:
        raise ValueError(f"threshold needs a - b > 1/4, got a - b = {d}")
    return 2.0 * d**1.5 / math.sqrt(4.0 * d - 1.0)


def in_window(p: Params) -> bool:
    """1/3 < a-b < 4/pi**2: g' changes sign, g has a unique interior minimum."""
    return ONE_THIRD < p.a - p.b < FOUR_OVER_PI_SQ


def in_unique_max_region(p: Params) -> bool:
    """Window plus 2/pi - b < a <= 1/2."""
    return in_window(p) and TWO_OVER_PI - p.b < p.a <= 0.5


def in_unique_min_region(p: Params) -> bool:
    """Window plus 1/2 < a <= 2/pi - b."""
    return in_window(p) and 0.5 < p.a <= TWO_OVER_PI - p.b


def in_max_then_min_region(p: Params) -> bool:
    """Window plus 2/pi < a+b < threshold and a > 1/2 (see module docstring)."""
    if not in_window(p):
        return False
    s = p.a + p.b
    return TWO_OVER_PI < s < increasing_threshold(p.a - p.b) and p.a > 0.5


def classify_symbolic(p: Params) -> RegionClass:
    """First matching closed-form region condition, in published order."""
    a, b = p.a, p.b
    s, d = a + b, a - b
    if s <= TWO_OVER_PI and a <= 0.5:
        return RegionClass.STRICTLY_DECREASING
    if (s >= TWO_OVER_PI and d >= FOUR_OVER_PI_SQ) or (a >= 0.5 and d <= ONE_THIRD):
        return RegionClass.STRICTLY_INCREASING
    if in_window(p) and s >= increasing_threshold(d):
        return RegionClass.STRICTLY_INCREASING
    if in_unique_max_region(p):
        return RegionClass.UNIQUE_MAX
    if in_unique_min_region(p):
        return RegionClass.UNIQUE_MIN
    if in_max_then_min_region(p):
        return RegionClass.MAX_THEN_MIN
    return RegionClass.INDETERMINATE


def _sign_exact(value: float, hp_expr, tol: float) -> int:
    """Sign of a closed-form condition value; near-tol cases re-run at 50 digits."""
    if abs(value) >= tol:
        return -1 if value < 0.0 else 1
    with hp_context(40):
        v = hp_expr()
        if v > _HP_ZERO:
            return 1
        if v < -_HP_ZERO:
            return -1
    return 0


def _g_prime_root_f64(p: Params, width: float = 1e-12) -> float:
    """Bisect the unique zero of g' assuming g'(0) < 0 < g'(1-)."""
    lo, hi = 0.0, 1.0 - 1e-12
    if float(family.g_prime_eval(p, EvalPoint(hi))) <= 0.0:
        return hi  # root crowded against x = 1
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if family.g_prime_eval(p, EvalPoint(mid)) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _g_min_sign(p: Params, tol: float) -> int | None:
    """Sign of min g (at the g' root); None when undecidable at 40+ digits."""
    x0 = _g_prime_root_f64(p)
    m = float(family.g_eval(p, EvalPoint(x0)))
    if abs(m) >= max(tol, 1e-12):
        return -1 if m < 0.0 else 1
    # re-locate the root and the minimum in high precision: the double root
    # location limits |m| resolution to about g'' * width**2
    with hp_context(40):
        lo, hi = mpf(0), 1 - mpf("1e-25")
        if family.g_prime_eval(p, EvalPoint(hi, digits=40)) <= 0:
            x0m = hi
        else:
            for _ in range(120):
                mid = (lo + hi) / 2
                if family.g_prime_eval(p, EvalPoint(mid, digits=40)) < 0:
                    lo = mid
                else:
                    hi = mid
            x0m = (lo + hi) / 2
        mm = family.g_eval(p, EvalPoint(x0m, digits=40))
        if mm > _HP_ZERO:
            return 1
        if mm < -_HP_ZERO:
            return -1
    return None


def classify_numeric(p: Params, tol: float = 1e-9) -> RegionClass:
    """Class from computed signs of g(0), g(1-), the g' limits and min g.

    Signs smaller than tol in float64 are re-evaluated at high precision;
    a minimum of g still indistinguishable from zero at 40 digits yields
    Indeterminate.
    """
    if not 0.0 < tol <= 1e-3:
        raise ValueError(f"tol must be in (0, 1e-3], got {tol}")
    a, b = p.a, p.b
    s0 = _sign_exact(a + b - TWO_OVER_PI, lambda: mpf(a) + mpf(b) - 2 / mp.pi, tol)
    s1 = _sign_exact(2.0 * a - 1.0, lambda: 2 * mpf(a) - 1, tol)
    lo = _sign_exact(a - b - FOUR_OVER_PI_SQ, lambda: mpf(a) - mpf(b) - 4 / mp.pi**2, tol)
    hi = _sign_exact(a - b - ONE_THIRD, lambda: mpf(a) - mpf(b) - mpf(1) / 3, tol)
    if lo >= 0:
        # g' > 0 on (0,1): g strictly increasing from a+b-2/pi to 2a-1
        if s0 >= 0:
            return RegionClass.STRICTLY_INCREASING
        if s1 <= 0:
            return RegionClass.STRICTLY_DECREASING
        return RegionClass.UNIQUE_MIN
    if hi <= 0:
        # g' < 0 on (0,1): g strictly decreasing
        if s0 <= 0:
            return RegionClass.STRICTLY_DECREASING
        if s1 >= 0:
            return RegionClass.STRICTLY_INCREASING
        return RegionClass.UNIQUE_MAX
    sm = _g_min_sign(p, tol)
    if sm is None:
        return RegionClass.INDETERMINATE
    if sm >= 0:
        return RegionClass.STRICTLY_INCREASING
    if s0 <= 0 and s1 <= 0:
        return RegionClass.STRICTLY_DECREASING
    if s0 > 0 and s1 <= 0:
        return RegionClass.UNIQUE_MAX
    if s0 <= 0 and s1 > 0:
        return RegionClass.UNIQUE_MIN
    return RegionClass.MAX_THEN_MIN


def critical_point_g(p: Params, tol: float) -> float | None:
    """Unique zero of g' in (0,1) to absolute tolerance tol, else None.

    None is returned when g' has constant sign (a-b outside (1/3, 4/pi**2))
    and also when the zero sits within tol of an endpoint, where no interior
    sign change is resolvable at the requested tolerance.
    """
    if not 0.0 < tol <= 1e-6:
        raise ValueError(f"tol must be in (0, 1e-6], got {tol}")
    a, b = p.a, p.b
    lo_sign = _sign_exact(a - b - FOUR_OVER_PI_SQ, lambda: mpf(a) - mpf(b) - 4 / mp.pi**2, tol)
    hi_sign = _sign_exact(a - b - ONE_THIRD, lambda: mpf(a) - mpf(b) - mpf(1) / 3, tol)
    if lo_sign >= 0 or hi_sign <= 0:
        return None
    lo, hi = tol, 1.0 - tol
    if float(family.g_prime_eval(p, EvalPoint(lo))) >= 0.0:
        return None
    if float(family.g_prime_eval(p, EvalPoint(hi))) <= 0.0:
        return None
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if family.g_prime_eval(p, EvalPoint(mid)) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def extrema_points(p: Params) -> ExtremaReport:
    """Both discriminant forms, the envelope extremum roots and coefficients.

    For a == b the quadratic degenerates to a linear equation with the
    single root a+b (a maximum of the envelope when a+b > 0, a minimum when
    a+b < 0); a == b == 0 is fully degenerate and raises.
    """
    a, b = p.a, p.b
    s, d = a + b, a - b
    disc_closed = 16.0 * a * b * (b - a) + s * s
    qa = d * d
    qb = s * (2.0 * d - 1.0)
    qc = s * s - d
    disc_quadratic = qb * qb - 4.0 * qa * qc
    x1: float | None = None
    x2: float | None = None
    if a == b:
        if qb == 0.0:
            raise ValueError("degenerate parameters: a = b and a + b = 0")
        root = -qc / qb  # = a + b
        if qb < 0.0:
            x1 = root
        else:
            x2 = root
    elif disc_closed > 0.0:
        rt = math.sqrt(disc_closed)
        x1 = (s * (1.0 - 2.0 * d) - rt) / (2.0 * qa)
        x2 = (s * (1.0 - 2.0 * d) + rt) / (2.0 * qa)
    max_coeff = None
    min_coeff = None
    if x1 is not None and 0.0 < x1 < 1.0:
        max_coeff = float(family.envelope_eval(p, EvalPoint(x1)))
    if x2 is not None and 0.0 < x2 < 1.0:
        min_coeff = float(family.envelope_eval(p, EvalPoint(x2)))
    return ExtremaReport(disc_closed, disc_quadratic, x1, x2, max_coeff, min_coeff)


def necessary_increasing(p: Params) -> bool:
    """Necessary condition for f to be strictly increasing: b >= 2/pi - a and a >= 1/2."""
    return p.b >= TWO_OVER_PI - p.a and p.a >= 0.5
