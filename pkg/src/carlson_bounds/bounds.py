"""Certified two-sided arccos bounds assembled from the inequality families.

Four concrete double inequalities are available, all of the shape
lower(x) < arccos x < upper(x) on (0,1):

  carlson         6*sqrt(1-x)/(2*sqrt(2)+sqrt(1+x)) .. cbrt(4)*sqrt(1-x)/(1+x)**(1/6)
  thm2(b)         (pi/2)*sqrt(1-x)/(1+x)**b .. 2**(b+1/2)*sqrt(1-x)/(1+x)**b, b >= 1/6
  thm2_reversed(b)  the reverse of thm2, valid for b <= 2/pi - 1/2
  thm3            6*sqrt(1-x)/(2*sqrt(2)+sqrt(1+x)) .. (1/2+sqrt(2))*pi*sqrt(1-x)/(2*sqrt(2)+sqrt(1+x))

plus the one-sided coefficient bounds thm2_maxcoef(a,b) (upper only) and
thm2_mincoef(a,b) (lower only) built from the envelope extremum.

best_envelope intersects the enabled families.  Doubles handed back by the
certified paths are rounded outward (lower down, upper up) by a few ulp so
the interval still contains arccos x after float64 evaluation error.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

from mpmath import mp, mpf, workdps

from . import classifier
from .family import Params
from .oracle import arccos_hp, default_digits

TWO_OVER_PI = 2.0 / math.pi
ONE_SIXTH = 1.0 / 6.0
B_STAR = TWO_OVER_PI - 0.5  # sharp reversed-family threshold 2/pi - 1/2
TWO_SQRT2 = 2.0 * math.sqrt(2.0)
PI_HALF = math.pi / 2.0
with workdps(30):
    CBRT4 = float(mp.cbrt(4))
    BEST_UPPER_THM3 = float((mpf(1) / 2 + mp.sqrt(2)) * mp.pi)

# outward-rounding factor: 16 eps covers the few-ulp forward error of the
# family expressions, preserving containment through float64 evaluation
_OUT = 16.0 * math.ulp(1.0)
_PI_DOWN = math.nextafter(math.pi, 0.0)
_PI_UP = math.nextafter(math.pi, 4.0)

FAMILY_KINDS = ("carlson", "thm2", "thm2_reversed", "thm3", "thm2_maxcoef", "thm2_mincoef")


@dataclass(frozen=True)
class BoundFamily:
    """One inequality family; b/a are set only where the kind needs them."""

    kind: str
    b: float | None = None
    a: float | None = None

    @property
    def id(self) -> str:
        if self.kind in ("carlson", "thm3"):
            return self.kind
        if self.kind in ("thm2", "thm2_reversed"):
            return f"{self.kind}({self.b!r})"
        return f"{self.kind}({self.a!r},{self.b!r})"

    @property
    def is_valid(self) -> bool:
        """Whether the family's validity condition holds for its parameters."""
        if self.kind in ("carlson", "thm3"):
            return True
        if self.kind == "thm2":
            return self.b >= ONE_SIXTH
        if self.kind == "thm2_reversed":
            return self.b <= B_STAR
        p = Params(self.a, self.b)
        rep = classifier.extrema_points(p)
        if self.kind == "thm2_maxcoef":
            return (
                classifier.in_unique_max_region(p)
                and rep.disc_closed > 0.0
                and rep.x1 is not None
                and rep.x1 > 0.0
            )
        return (
            classifier.in_unique_min_region(p)
            and rep.disc_closed > 0.0
            and rep.x2 is not None
            and 0.0 < rep.x2 < 1.0
        )

    # raw expression values (no validity gate -- the verifier probes invalid
    # parameter choices on purpose to exhibit violations)

    def pair_f64(self, x: float) -> tuple[float | None, float | None]:
        """(lower, upper) at x in [0,1); one-sided kinds return None for the other."""
        if self.kind in ("carlson", "thm3"):
            base = math.sqrt(1.0 - x) / (TWO_SQRT2 + math.sqrt(1.0 + x))
            if self.kind == "carlson":
                return 6.0 * base, CBRT4 * math.exp(
                    0.5 * math.log1p(-x) - math.log1p(x) / 6.0
                )
            return 6.0 * base, BEST_UPPER_THM3 * base
        if self.kind in ("thm2", "thm2_reversed"):
            w = math.exp(0.5 * math.log1p(-x) - self.b * math.log1p(x))
            lo, up = PI_HALF * w, math.pow(2.0, self.b + 0.5) * w
            return (lo, up) if self.kind == "thm2" else (up, lo)
        rep = classifier.extrema_points(Params(self.a, self.b))
        w = math.exp(self.a * math.log1p(-x) - self.b * math.log1p(x))
        if self.kind == "thm2_maxcoef":
            if rep.max_coeff is None:
                raise ValueError(f"{self.id}: envelope maximum not inside (0,1)")
            return None, rep.max_coeff * w
        if rep.min_coeff is None:
            raise ValueError(f"{self.id}: envelope minimum not inside (0,1)")
        return rep.min_coeff * w, None

    def pair_mp(self, x: mpf) -> tuple[mpf | None, mpf | None]:
        """Same expressions in mpmath arithmetic at the caller's precision."""
        one = mpf(1)
        if self.kind in ("carlson", "thm3"):
            base = mp.sqrt(1 - x) / (2 * mp.sqrt(2) + mp.sqrt(1 + x))
            if self.kind == "carlson":
                return 6 * base, mp.cbrt(4) * mp.sqrt(1 - x) / (1 + x) ** (one / 6)
            return 6 * base, (one / 2 + mp.sqrt(2)) * mp.pi * base
        if self.kind in ("thm2", "thm2_reversed"):
            b = mpf(self.b)
            w = mp.sqrt(1 - x) / (1 + x) ** b
            lo, up = mp.pi / 2 * w, 2 ** (b + one / 2) * w
            return (lo, up) if self.kind == "thm2" else (up, lo)
        a, b = mpf(self.a), mpf(self.b)
        s, d = a + b, a - b
        disc = 16 * a * b * (b - a) + s**2
        rt = mp.sqrt(disc)
        w = (1 - x) ** a / (1 + x) ** b
        if self.kind == "thm2_maxcoef":
            root = (s * (1 - 2 * d) - rt) / (2 * d**2)
            return None, _coef_mp(a, b, root) * w
        root = (s * (1 - 2 * d) + rt) / (2 * d**2)
        return _coef_mp(a, b, root) * w, None


def _coef_mp(a: mpf, b: mpf, root: mpf) -> mpf:
    half = mpf(1) / 2
    return (1 + root) ** (b + half) * (1 - root) ** (half - a) / (a + b + (a - b) * root)


def carlson() -> BoundFamily:
    return BoundFamily("carlson")


def thm2(b: float) -> BoundFamily:
    return BoundFamily("thm2", b=b)


def thm2_reversed(b: float) -> BoundFamily:
    return BoundFamily("thm2_reversed", b=b)


def thm3() -> BoundFamily:
    return BoundFamily("thm3")


def thm2_maxcoef(a: float, b: float) -> BoundFamily:
    return BoundFamily("thm2_maxcoef", b=b, a=a)


def thm2_mincoef(a: float, b: float) -> BoundFamily:
    return BoundFamily("thm2_mincoef", b=b, a=a)


DEFAULT_FAMILIES = (carlson(), thm2(ONE_SIXTH), thm2_reversed(B_STAR), thm3())


@dataclass(frozen=True)
class BoundInterval:
    """Certified lower/upper pair with the contributing family ids."""

    lower: float | None
    upper: float | None
    lower_family: str | None
    upper_family: str | None

    @property
    def width(self) -> float | None:
        if self.lower is None or self.upper is None:
            return None
        return self.upper - self.lower


def parse_family(text: str) -> BoundFamily:
    """Parse a family id like carlson, thm2(0.2) or thm2_maxcoef(0.5,0.14)."""
    text = text.strip()
    if text == "carlson":
        return carlson()
    if text == "thm3":
        return thm3()
    for kind, nargs in (
        ("thm2_reversed", 1),
        ("thm2_maxcoef", 2),
        ("thm2_mincoef", 2),
        ("thm2", 1),
    ):
        if text.startswith(kind + "(") and text.endswith(")"):
            args = [float(t) for t in text[len(kind) + 1 : -1].split(",")]
            if len(args) != nargs:
                break
            if nargs == 1:
                return BoundFamily(kind, b=args[0])
            return BoundFamily(kind, a=args[0], b=args[1])
    raise ValueError(f"unrecognized bound family {text!r}")


def _certified_pair(fam: BoundFamily, x: float) -> tuple[float | None, float | None]:
    lo, up = fam.pair_f64(x)
    if lo is not None:
        lo *= 1.0 - _OUT
    if up is not None:
        up *= 1.0 + _OUT
    return lo, up


def family_bounds(fam: BoundFamily, x: float) -> BoundInterval:
    """Certified interval from a single valid family at x in (0,1)."""
    if not fam.is_valid:
        raise ValueError(f"family {fam.id} is outside its validity region")
    if not 0.0 < x < 1.0:
        raise ValueError(f"x must be in (0,1), got {x}")
    lo, up = _certified_pair(fam, x)
    return BoundInterval(
        lo, up, fam.id if lo is not None else None, fam.id if up is not None else None
    )


def _combine(x: float, fams) -> BoundInterval:
    best_lo = best_up = None
    lo_id = up_id = None
    for fam in fams:
        lo, up = _certified_pair(fam, x)
        if lo is not None and (best_lo is None or lo > best_lo):
            best_lo, lo_id = lo, fam.id
        if up is not None and (best_up is None or up < best_up):
            best_up, up_id = up, fam.id
    return BoundInterval(best_lo, best_up, lo_id, up_id)


def best_envelope(x: float, enabled=None) -> BoundInterval:
    """Tightest certified interval for arccos x over the enabled families.

    Domain is (-1, 1].  Negative arguments use the reflection
    arccos x = pi - arccos(-x) with pi rounded outward by one ulp per side,
    swapping which family certifies which endpoint.
    """
    fams = DEFAULT_FAMILIES if enabled is None else tuple(enabled)
    if not fams:
        raise ValueError("enabled family set is empty")
    for fam in fams:
        if not fam.is_valid:
            raise ValueError(f"family {fam.id} is outside its validity region")
    if not -1.0 < x <= 1.0:
        raise ValueError(f"x must be in (-1, 1], got {x}")
    if x == 1.0:
        return BoundInterval(0.0, 0.0, "exact", "exact")
    if x >= 0.0:
        return _combine(x, fams)
    inner = _combine(-x, fams)
    return BoundInterval(
        _PI_DOWN - inner.upper,
        _PI_UP - inner.lower,
        inner.upper_family,
        inner.lower_family,
    )


def approx_arccos(x: float, enabled=None) -> tuple[float, float]:
    """Midpoint approximation with certified error radius.

    Returns (value, radius) with |value - arccos x| <= radius guaranteed.
    """
    env = best_envelope(x, enabled)
    if env.lower is None or env.upper is None:
        raise ValueError("enabled families give no two-sided interval")
    value = 0.5 * (env.lower + env.upper)
    radius = max(env.upper - value, value - env.lower) * (1.0 + 4.0 * math.ulp(1.0))
    return value, radius


TABLE_COLUMNS = ("x", "lower", "upper", "reference", "width", "lower_family", "upper_family")


def bound_table(x_grid, enabled=None, digits: int | None = None) -> list[dict]:
    """One row per grid point: certified bounds plus a high-precision reference.

    The grid must be strictly increasing inside (0,1).  The reference column
    is arccos at `digits` (default 40) rounded to a double.
    """
    if digits is None:
        digits = default_digits()
    xs = [float(x) for x in x_grid]
    if any(not 0.0 < x < 1.0 for x in xs):
        raise ValueError("grid points must lie in (0,1)")
    if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])):
        raise ValueError("grid must be strictly increasing")
    rows = []
    for x in xs:
        env = best_envelope(x, enabled)
        if env.lower is None or env.upper is None:
            raise ValueError("enabled families give no two-sided interval")
        rows.append(
            {
                "x": x,
                "lower": env.lower,
                "upper": env.upper,
                "reference": float(arccos_hp(x, digits).value),
                "width": env.upper - env.lower,
                "lower_family": env.lower_family,
                "upper_family": env.upper_family,
            }
        )
    return rows


def table_to_csv(rows: list[dict]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for row in rows:
        writer.writerow([repr(row[c]) if isinstance(row[c], float) else row[c] for c in TABLE_COLUMNS])
    return out.getvalue()


def table_to_json(rows: list[dict]) -> str:
    return json.dumps(rows)
