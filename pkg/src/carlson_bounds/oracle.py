"""Ground-truth arccos evaluation and named constants.

Every arccos here funnels through the half-angle identity

    arccos x = 2*atan(sqrt((1-x)/(1+x)))        for x > 0

with the reflection arccos x = pi - arccos(-x) for x < 0, so accuracy does
not collapse near x = 1 where 1 - x**2 cancels.  The same code path serves
the arbitrary-precision oracle (mpmath backend) and the float64 evaluator.
"""

from __future__ import annotations

import math
import os
import threading
from contextlib import contextmanager
from dataclasses import dataclass

from mpmath import mp, mpf, workdps

MIN_DIGITS = 17
MAX_DIGITS = 200
DEFAULT_DIGITS = 40

# extra working digits so results still honor the requested digit count
# after the handful of roundings in the identity
GUARD_DIGITS = 10

PRECISION_ENV = "CARLSON_PRECISION"

CONSTANT_NAMES = (
    "PI",
    "TWO_OVER_PI",
    "FOUR_OVER_PI_SQ",
    "ONE_THIRD",
    "CBRT4",
    "TWO_SQRT2",
    "BEST_UPPER_THM3",
)


def default_digits() -> int:
    """Default oracle precision; CARLSON_PRECISION overrides the built-in 40."""
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_DIGITS
    digits = int(raw)
    _check_digits(digits)
    return digits


def _check_digits(digits: int) -> None:
    if not MIN_DIGITS <= digits <= MAX_DIGITS:
        raise ValueError(
            f"precision must be in [{MIN_DIGITS}, {MAX_DIGITS}] digits, got {digits}"
        )


# mpmath's default context is process-global, so concurrent callers at mixed
# precisions would corrupt each other's working precision; all high-precision
# regions in this package serialize on one reentrant lock
_MP_LOCK = threading.RLock()


@contextmanager
def hp_context(digits: int):
    """Guarded working precision: digits plus guard, exclusive context access."""
    with _MP_LOCK:
        with workdps(digits + GUARD_DIGITS):
            yield


@dataclass(frozen=True)
class HPValue:
    """A value carrying at least `digits` correct significant decimal digits."""

    digits: int
    value: mpf

    def __float__(self) -> float:
        return float(self.value)


def acos_mp(x: mpf) -> mpf:
    """arccos of an mpf at the caller's working precision (endpoint-stable)."""
    if x < 0:
        return mp.pi - acos_mp(-x)
    if x == 0:
        return mp.pi / 2
    if x == 1:
        return mp.zero
    return 2 * mp.atan(mp.sqrt((1 - x) / (1 + x)))


def arccos_hp(x, digits: int | None = None) -> HPValue:
    """arccos x with relative error at most 10**(1-digits).

    x may be a float, an mpf, or a decimal string (strings let callers state
    points like 1 - 1e-30 that no float can represent).
    """
    if digits is None:
        digits = default_digits()
    _check_digits(digits)
    with hp_context(digits):
        xm = mpf(x)
        if abs(xm) > 1:
            raise ValueError(f"arccos domain is [-1, 1], got {x}")
        return HPValue(digits, acos_mp(xm))


def arccos_stable(x: float) -> float:
    """float64 arccos accurate to a few ulp even within 1e-15 of the endpoints."""
    if not -1.0 <= x <= 1.0:
        raise ValueError(f"arccos domain is [-1, 1], got {x}")
    if x < 0.0:
        return math.pi - arccos_stable(-x)
    return 2.0 * math.atan2(math.sqrt(1.0 - x), math.sqrt(1.0 + x))


def const_hp(name: str, digits: int | None = None) -> HPValue:
    """Named constant to the requested digits.

    BEST_UPPER_THM3 is (1/2 + sqrt(2))*pi, the sharp upper constant of the
    square-root-kernel double inequality; CBRT4 is the sharp upper constant
    of the classic Carlson inequality (equals 2**(1/6 + 1/2)).
    """
    if digits is None:
        digits = default_digits()
    _check_digits(digits)
    if name not in CONSTANT_NAMES:
        raise ValueError(f"unknown constant {name!r}; expected one of {CONSTANT_NAMES}")
    with hp_context(digits):
        if name == "PI":
            value = +mp.pi
        elif name == "TWO_OVER_PI":
            value = 2 / mp.pi
        elif name == "FOUR_OVER_PI_SQ":
            value = 4 / mp.pi**2
        elif name == "ONE_THIRD":
            value = mpf(1) / 3
        elif name == "CBRT4":
            value = mp.cbrt(4)
        elif name == "TWO_SQRT2":
            value = 2 * mp.sqrt(2)
        else:  # BEST_UPPER_THM3
            value = (mpf(1) / 2 + mp.sqrt(2)) * mp.pi
        return HPValue(digits, value)


def ulp_distance(value: float, reference: HPValue) -> float:
    """|value - reference| measured in ulps of the double nearest the reference."""
    ref_d = float(reference.value)
    unit = math.ulp(abs(ref_d)) if ref_d != 0.0 else math.ulp(0.0)
    with hp_context(reference.digits):
        return float(abs(mpf(value) - reference.value) / mpf(unit))
