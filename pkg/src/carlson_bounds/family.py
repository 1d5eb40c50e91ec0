"""Evaluators for the monotone arccos family and its proof-chain functions.

The central object is f(a,b; x) = (1+x)**b * (1-x)**(-a) * arccos x on (0,1),
whose monotonicity pattern encodes two-sided arccos bounds.  Its derivative
factors through

    g(a,b; x)  = a + b + (a-b)*x - sqrt(1-x**2)/arccos x,

and the sign analysis of g cascades down a parameter-free chain
q -> h -> g'' (q < 0, h > 0, g'' > 0 on [0,1)).  All of those, the critical
value envelope, and the square-root-kernel comparison function F are
evaluable in float64 or at any requested decimal precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpf

from .oracle import acos_mp, arccos_stable, default_digits, hp_context

# float64 evaluations this close to an endpoint are computed at the default
# high precision instead: 1 - x**2 style cancellation destroys doubles there
ENDPOINT_PROMOTE = 1e-8

# wider bands for the expressions that cancel worse near x = 1:
# h goes like (1-x)**3 and q like (1-x)**(5/2) against O(1-x) terms,
# g' is a difference of two terms growing like 1/(1-x)
CHAIN_PROMOTE = 1e-5
GPRIME_PROMOTE = 1e-4

TWO_SQRT2 = 2.0 * math.sqrt(2.0)

CHAIN_SELECTORS = ("h", "q", "g_second", "big_g")


@dataclass(frozen=True)
class Params:
    """Exponent pair (a, b) of the family; any finite reals."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError(f"parameters must be finite, got ({self.a}, {self.b})")


@dataclass(frozen=True)
class EvalPoint:
    """Evaluation point with requested precision.

    digits=None means float64 (auto-promoted near the endpoints); an integer
    requests that many decimal digits.  x may be a float, mpf, or decimal
    string so callers can state points like 1 - 1e-30 exactly.
    """

    x: float | str | mpf
    digits: int | None = None


def _domain_error(x, lo_txt: str, hi_txt: str):
    raise ValueError(f"x must be in {lo_txt}0, 1{hi_txt}, got {x}")


def _evaluate(pt: EvalPoint, f64, fmp, include_zero: bool, band: float = ENDPOINT_PROMOTE):
    """Dispatch to the float64 or high-precision implementation.

    Domain is [0,1) when include_zero else (0,1); checks run on the value in
    the precision the point carries, so string/mpf points survive intact.
    float64 requests within `band` of x = 1 (or within the general band of
    x = 0) are silently computed at the default high precision.
    """
    lo_txt, hi_txt = ("[", ")") if include_zero else ("(", ")")
    if pt.digits is not None:
        with hp_context(pt.digits):
            xm = mpf(pt.x)
            ok = (xm >= 0 if include_zero else xm > 0) and xm < 1
            if not ok:
                _domain_error(pt.x, lo_txt, hi_txt)
            return fmp(xm)
    x = float(pt.x)
    ok = (x >= 0.0 if include_zero else x > 0.0) and x < 1.0
    if not ok:
        _domain_error(pt.x, lo_txt, hi_txt)
    if (0.0 < x <= ENDPOINT_PROMOTE) or (1.0 - x <= band):
        with hp_context(default_digits()):
            return float(fmp(mpf(pt.x)))
    return f64(x)


# ---------------------------------------------------------------------------
# f and its endpoint limits


def f_eval(p: Params, pt: EvalPoint):
    """f(a,b; x) = (1+x)**b * (1-x)**(-a) * arccos x, x in (0,1)."""
    a, b = p.a, p.b

    def f64(x: float) -> float:
        return math.exp(b * math.log1p(x) - a * math.log1p(-x)) * arccos_stable(x)

    def fmp(x: mpf) -> mpf:
        return mp.exp(b * mp.log(1 + x) - a * mp.log(1 - x)) * acos_mp(x)

    return _evaluate(pt, f64, fmp, include_zero=False)


def f_limit_at_1(p: Params) -> float:
    """Limit of f at x -> 1-: 2**(b+1/2) when a == 1/2, 0 below, inf above."""
    if p.a == 0.5:
        return math.pow(2.0, p.b + 0.5)
    return 0.0 if p.a < 0.5 else math.inf


# ---------------------------------------------------------------------------
# g, g' and their endpoint limits


def g_eval(p: Params, pt: EvalPoint):
    """g(a,b; x) = a + b + (a-b)*x - sqrt(1-x**2)/arccos x, x in [0,1).

    At x == 0 the closed form a + b - 2/pi is returned directly.
    """
    a, b = p.a, p.b
    if _is_exact_zero(pt):
        if pt.digits is not None:
            with hp_context(pt.digits):
                return mpf(a) + mpf(b) - 2 / mp.pi
        return a + b - 2.0 / math.pi

    def f64(x: float) -> float:
        return a + b + (a - b) * x - math.sqrt((1.0 - x) * (1.0 + x)) / arccos_stable(x)

    def fmp(x: mpf) -> mpf:
        return mpf(a) + mpf(b) + (mpf(a) - mpf(b)) * x - mp.sqrt((1 - x) * (1 + x)) / acos_mp(x)

    return _evaluate(pt, f64, fmp, include_zero=True)


def g_limit_at_1(p: Params) -> float:
    """Limit of g at x -> 1-: 2a - 1."""
    return 2.0 * p.a - 1.0


def g_prime_eval(p: Params, pt: EvalPoint):
    """g'(a,b; x) = a - b - 1/arccos(x)**2 + x/(sqrt(1-x**2)*arccos x).

    At x == 0 the closed form a - b - 4/pi**2 is returned directly; the
    x -> 1- limit a - b - 1/3 is delivered by g_prime_limit_at_1.
    """
    a, b = p.a, p.b
    if _is_exact_zero(pt):
        if pt.digits is not None:
            with hp_context(pt.digits):
                return mpf(a) - mpf(b) - 4 / mp.pi**2
        return a - b - 4.0 / math.pi**2

    def f64(x: float) -> float:
        ac = arccos_stable(x)
        return a - b - 1.0 / (ac * ac) + x / (math.sqrt((1.0 - x) * (1.0 + x)) * ac)

    def fmp(x: mpf) -> mpf:
        ac = acos_mp(x)
        return mpf(a) - mpf(b) - 1 / ac**2 + x / (mp.sqrt((1 - x) * (1 + x)) * ac)

    return _evaluate(pt, f64, fmp, include_zero=True, band=GPRIME_PROMOTE)


def g_prime_limit_at_1(p: Params) -> float:
    """Limit of g' at x -> 1-: a - b - 1/3."""
    return p.a - p.b - 1.0 / 3.0


def _is_exact_zero(pt: EvalPoint) -> bool:
    try:
        return float(pt.x) == 0.0
    except (TypeError, ValueError):
        return False


# ---------------------------------------------------------------------------
# parameter-free proof chain: h, q, g'' and the F-derivative kernel G


def _h_f64(x: float) -> float:
    ac = arccos_stable(x)
    return ac * ac + x * math.sqrt((1.0 - x) * (1.0 + x)) * ac + 2.0 * (x - 1.0) * (x + 1.0)


def _h_mp(x: mpf) -> mpf:
    ac = acos_mp(x)
    return ac**2 + x * mp.sqrt((1 - x) * (1 + x)) * ac + 2 * (x - 1) * (x + 1)


def _q_f64(x: float) -> float:
    return 3.0 * x * math.sqrt((1.0 - x) * (1.0 + x)) / (1.0 + 2.0 * x * x) - arccos_stable(x)


def _q_mp(x: mpf) -> mpf:
    return 3 * x * mp.sqrt((1 - x) * (1 + x)) / (1 + 2 * x**2) - acos_mp(x)


def _g_second_f64(x: float) -> float:
    ac = arccos_stable(x)
    return _h_f64(x) / (((1.0 - x) * (1.0 + x)) ** 1.5 * ac**3)


def _g_second_mp(x: mpf) -> mpf:
    ac = acos_mp(x)
    return _h_mp(x) / (((1 - x) * (1 + x)) ** mpf("1.5") * ac**3)


def _big_g_f64(x: float) -> float:
    num = (math.sqrt(1.0 + x) + TWO_SQRT2) * math.sqrt(1.0 - x)
    return arccos_stable(x) - num / (1.0 + math.sqrt(2.0 * (x + 1.0)))


def _big_g_mp(x: mpf) -> mpf:
    num = (mp.sqrt(1 + x) + 2 * mp.sqrt(2)) * mp.sqrt(1 - x)
    return acos_mp(x) - num / (1 + mp.sqrt(2 * (x + 1)))


_CHAIN = {
    "h": (_h_f64, _h_mp, CHAIN_PROMOTE),
    "q": (_q_f64, _q_mp, CHAIN_PROMOTE),
    "g_second": (_g_second_f64, _g_second_mp, CHAIN_PROMOTE),
    "big_g": (_big_g_f64, _big_g_mp, ENDPOINT_PROMOTE),
}


def chain_eval(which: str, p: Params | None, pt: EvalPoint):
    """Evaluate a proof-chain function on [0,1); p is accepted but unused.

    h(x)  = arccos(x)**2 + x*sqrt(1-x**2)*arccos x + 2x**2 - 2
    q(x)  = 3x*sqrt(1-x**2)/(1+2x**2) - arccos x
    g''   = h(x) / ((1-x**2)**(3/2) * arccos(x)**3)   (parameter-free)
    big_g = arccos x - (sqrt(1+x)+2*sqrt(2))*sqrt(1-x)/(1+sqrt(2(x+1)))
    """
    if which not in _CHAIN:
        raise ValueError(f"unknown chain function {which!r}; expected one of {CHAIN_SELECTORS}")
    f64, fmp, band = _CHAIN[which]
    return _evaluate(pt, f64, fmp, include_zero=True, band=band)


# ---------------------------------------------------------------------------
# critical-value envelope and the minimum bound for g


def envelope_eval(p: Params, pt: EvalPoint):
    """Critical-value envelope (1+x)**(b+1/2) * (1-x)**(1/2-a) / (a+b+(a-b)x).

    This is the value f takes at a critical point located at x; its interior
    extrema give the coefficient bounds.  Raises on the pole a+b+(a-b)x = 0.
    """
    a, b = p.a, p.b

    def f64(x: float) -> float:
        den = a + b + (a - b) * x
        if den == 0.0:
            raise ValueError(f"envelope pole: a+b+(a-b)x = 0 at x = {x}")
        return math.exp((b + 0.5) * math.log1p(x) + (0.5 - a) * math.log1p(-x)) / den

    def fmp(x: mpf) -> mpf:
        den = mpf(a) + mpf(b) + (mpf(a) - mpf(b)) * x
        if den == 0:
            raise ValueError(f"envelope pole: a+b+(a-b)x = 0 at x = {x}")
        return mp.exp((b + mpf("0.5")) * mp.log(1 + x) + (mpf("0.5") - a) * mp.log(1 - x)) / den

    return _evaluate(pt, f64, fmp, include_zero=False)


def g_min_lower_bound(p: Params) -> float:
    """Lower bound a+b - 2(a-b)**1.5/sqrt(4(a-b)-1) for min g; needs a-b > 1/4."""
    d = p.a - p.b
    if 4.0 * d - 1.0 <= 0.0:
        raise ValueError(f"g_min_lower_bound needs a - b > 1/4, got a - b = {d}")
    return p.a + p.b - 2.0 * d**1.5 / math.sqrt(4.0 * d - 1.0)


# ---------------------------------------------------------------------------
# the square-root-kernel comparison function F


def big_f_eval(pt: EvalPoint):
    """F(x) = (2*sqrt(2) + sqrt(1+x)) / sqrt(1-x) * arccos x on (0,1).

    Strictly decreasing, from (1/2+sqrt(2))*pi at 0+ down to 6 at 1-.
    """

    def f64(x: float) -> float:
        return (TWO_SQRT2 + math.sqrt(1.0 + x)) / math.sqrt(1.0 - x) * arccos_stable(x)

    def fmp(x: mpf) -> mpf:
        return (2 * mp.sqrt(2) + mp.sqrt(1 + x)) / mp.sqrt(1 - x) * acos_mp(x)

    return _evaluate(pt, f64, fmp, include_zero=False)
