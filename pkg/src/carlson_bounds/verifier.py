"""Numerical verification harness for every desk-scale claim.

Each check samples deterministically from a seed, measures signed margins at
high precision (40 digits by default), and returns a VerificationReport that
serializes to JSON.  Containment margins are relative to the arccos
reference; a margin is "strict" when it exceeds 1e-30, the testable version
of strict inequality at 40 digits.

Uniform containment samples are confined to [1e-12, 1 - 1e-12]: several
bounds are asymptotically sharp at an endpoint (their true margin decays
like x**2 or (1-x)**2 there), so beyond that depth even exact margins fall
under the strictness floor.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field

import numpy as np
from mpmath import mp, mpf

from . import bounds as bnd
from . import family
from .classifier import RegionClass
from .family import EvalPoint, Params
from .oracle import acos_mp, default_digits, hp_context

STRICT_MARGIN = 1e-30
_SAMPLE_EDGE = 1e-12


@dataclass
class VerificationReport:
    """Outcome of one harness check."""

    check_id: str
    samples: int
    worst_margin: float
    passed: bool
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "samples": self.samples,
            "worst_margin": self.worst_margin,
            "passed": self.passed,
            "witnesses": [list(w) for w in self.witnesses],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _containment_points(n: int, endpoint_depth: int, seed: int):
    """n uniform floats inside [1e-12, 1-1e-12] plus geometric endpoint ladders."""
    rng = random.Random(seed)
    pts: list = [
        _SAMPLE_EDGE + (1.0 - 2.0 * _SAMPLE_EDGE) * rng.random() for _ in range(n)
    ]
    for k in range(1, min(endpoint_depth, 12) + 1):
        pts.append(mpf(10) ** -k)
        pts.append(1 - mpf(10) ** -k)
    return pts


def check_double_inequality(
    fam: bnd.BoundFamily,
    n: int,
    endpoint_depth: int,
    seed: int = 0,
    digits: int | None = None,
) -> VerificationReport:
    """Strict containment lower < arccos < upper over samples, at high precision.

    The family's raw expressions are evaluated even when its validity
    condition fails; that is how sharpness violations are exhibited.
    """
    if n < 1000:
        raise ValueError(f"need n >= 1000 samples, got {n}")
    if fam.kind not in bnd.FAMILY_KINDS:
        raise ValueError(f"invalid family kind {fam.kind!r}")
    if digits is None:
        digits = default_digits()
    pts = _containment_points(n, endpoint_depth, seed)
    worst = math.inf
    witnesses = []
    with hp_context(digits):
        for x in pts:
            xm = mpf(x)
            ref = acos_mp(xm)
            lo, up = fam.pair_mp(xm)
            for side, margin in (
                ("lower", (ref - lo) / ref if lo is not None else None),
                ("upper", (up - ref) / ref if up is not None else None),
            ):
                if margin is None:
                    continue
                mf = float(margin)
                worst = min(worst, mf)
                if margin <= STRICT_MARGIN:
                    witnesses.append((float(xm), f"{side} bound violated, margin {mf!r}"))
    return VerificationReport(
        check_id=f"containment:{fam.id}",
        samples=len(pts),
        worst_margin=worst,
        passed=not witnesses,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# monotonicity-class checks via sign patterns of consecutive differences

_CLASS_PATTERNS = {
    RegionClass.STRICTLY_DECREASING: (-1,),
    RegionClass.STRICTLY_INCREASING: (1,),
    RegionClass.UNIQUE_MAX: (1, -1),
    RegionClass.UNIQUE_MIN: (-1, 1),
    RegionClass.MAX_THEN_MIN: (1, -1, 1),
}

_SCAN_REL_TOL = 1e-12


def scan_pattern(p: Params, n: int, digits: int | None = None):
    """Compressed sign pattern of consecutive f differences on an n-point grid.

    Differences below 1e-12 relative are re-decided at high precision, so
    shallow extrema (and near-1 comparisons on huge f values) are resolved
    exactly; differences still below 1e-30 relative there count as flat.
    """
    if digits is None:
        digits = default_digits()
    x = np.arange(1, n + 1) / (n + 1.0)
    f = np.exp(p.b * np.log1p(x) - p.a * np.log1p(-x)) * np.arccos(x)
    d = np.diff(f)
    scale = np.maximum(np.abs(f[:-1]), np.abs(f[1:]))
    rel = d / scale
    signs = np.where(rel > _SCAN_REL_TOL, 1, np.where(rel < -_SCAN_REL_TOL, -1, 0))
    for idx in np.nonzero(signs == 0)[0]:
        with hp_context(digits):
            f1 = family.f_eval(p, EvalPoint(float(x[idx]), digits=digits))
            f2 = family.f_eval(p, EvalPoint(float(x[idx + 1]), digits=digits))
            dm = (f2 - f1) / max(abs(f1), abs(f2))
            if dm > STRICT_MARGIN:
                signs[idx] = 1
            elif dm < -STRICT_MARGIN:
                signs[idx] = -1
    pattern = []
    for s in signs:
        if s != 0 and (not pattern or pattern[-1] != s):
            pattern.append(int(s))
    return tuple(pattern), x, f


def check_class(p: Params, expected: RegionClass, n: int, digits: int | None = None) -> VerificationReport:
    """Grid scan of f must exhibit the expected class's difference pattern."""
    if n < 256:
        raise ValueError(f"need n >= 256 scan points, got {n}")
    if expected not in _CLASS_PATTERNS:
        raise ValueError(f"no scan pattern for {expected}")
    pattern, x, f = scan_pattern(p, n, digits)
    passed = pattern == _CLASS_PATTERNS[expected]
    witnesses = []
    if expected in (RegionClass.UNIQUE_MAX, RegionClass.MAX_THEN_MIN):
        witnesses.append((float(x[int(np.argmax(f))]), "grid argmax of f"))
    if expected in (RegionClass.UNIQUE_MIN, RegionClass.MAX_THEN_MIN):
        witnesses.append((float(x[int(np.argmin(f[len(f) // 8 :])) + len(f) // 8]), "grid argmin of f (right part)"))
    if not passed:
        witnesses.append(([p.a, p.b], f"observed pattern {pattern}, expected {_CLASS_PATTERNS[expected]}"))
    d = np.abs(np.diff(f)) / np.maximum(np.abs(f[:-1]), np.abs(f[1:]))
    worst = float(np.min(d[d > 0])) if np.any(d > 0) else 0.0
    return VerificationReport(
        check_id=f"class:({p.a!r},{p.b!r}):{expected.value}",
        samples=n,
        worst_margin=worst,
        passed=passed,
        witnesses=witnesses,
    )


def check_sign_chain(n: int, digits: int | None = None) -> VerificationReport:
    """q < 0 < h, g'' > 0 on [0, 1-1e-8]; q increasing, h decreasing; both -> 0 at 1."""
    if n < 1000:
        raise ValueError(f"need n >= 1000 samples, got {n}")
    if digits is None:
        digits = default_digits()
    top = 1.0 - 1e-8
    xs = [top * i / (n - 1) for i in range(n)]
    qv = [float(family.chain_eval("q", None, EvalPoint(x))) for x in xs]
    hv = [float(family.chain_eval("h", None, EvalPoint(x))) for x in xs]
    gv = [float(family.chain_eval("g_second", None, EvalPoint(x))) for x in xs]
    margins = []
    witnesses = []

    def take(name, seq):
        m = min(seq)
        margins.append(m)
        if m <= 0.0:
            witnesses.append((float(xs[seq.index(m)]), f"{name} margin {m!r}"))

    take("q<0", [-v for v in qv])
    take("h>0", hv)
    take("g''>0", gv)
    take("q increasing", [q2 - q1 for q1, q2 in zip(qv, qv[1:])])
    take("h decreasing", [h1 - h2 for h1, h2 in zip(hv, hv[1:])])
    q_end = float(family.chain_eval("q", None, EvalPoint(1.0 - 1e-10, digits=digits)))
    h_end = float(family.chain_eval("h", None, EvalPoint(1.0 - 1e-10, digits=digits)))
    take("q(1-) -> 0", [1e-4 - abs(q_end), -q_end])
    take("h(1-) -> 0", [1e-4 - h_end, h_end])
    return VerificationReport(
        check_id="sign_chain",
        samples=n,
        worst_margin=min(margins),
        passed=not witnesses,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# sharpness of the four constants

SHARPNESS_KINDS = ("b_upper_1_6", "b_lower_2pi", "thm3_constants")


def check_sharpness(kind: str, epsilon: float, digits: int | None = None) -> VerificationReport:
    """Show the constants 1/6, 2/pi - 1/2, 6 and (1/2+sqrt(2))*pi are sharp.

    For the two thresholds the check perturbs b by epsilon past the sharp
    value and sweeps x = 1 - 10**-k (or 10**-k) until the inequality flips;
    the flip point is the witness.  For thm3_constants it pins F at the two
    endpoints to the claimed constants.
    """
    if kind not in SHARPNESS_KINDS:
        raise ValueError(f"unknown sharpness kind {kind!r}")
    if not 0.0 < epsilon <= 1e-2:
        raise ValueError(f"epsilon must be in (0, 1e-2], got {epsilon}")
    if digits is None:
        digits = default_digits()

    if kind == "thm3_constants":
        sup_ref = float(family.big_f_eval(EvalPoint(1e-8, digits=digits)))
        inf_ref = float(family.big_f_eval(EvalPoint(1.0 - 1e-12, digits=digits)))
        sup_err = abs(sup_ref - bnd.BEST_UPPER_THM3)
        inf_err = abs(inf_ref - 6.0)
        inf_tol = max(epsilon, 1e-4)
        grid = [i / 32 for i in range(1, 32)]
        fv = [float(family.big_f_eval(EvalPoint(x))) for x in grid]
        mono = min(f1 - f2 for f1, f2 in zip(fv, fv[1:]))
        margins = [epsilon - sup_err, inf_tol - inf_err, mono]
        witnesses = [
            (1e-8, f"F = {sup_ref!r}, sup constant error {sup_err!r}"),
            (1.0 - 1e-12, f"F = {inf_ref!r}, inf constant error {inf_err!r}"),
        ]
        if mono <= 0.0:
            witnesses.append((0.0, "monotone decrease failed"))
        return VerificationReport(
            check_id=f"sharpness:{kind}",
            samples=len(grid) + 2,
            worst_margin=min(margins),
            passed=all(m > 0.0 for m in margins),
            witnesses=witnesses,
        )

    # both perturbed thresholds break on the upper side of their family:
    # past 1/6 the 2**(b+1/2) expression dips under arccos near 1, past
    # 2/pi - 1/2 the reversed family's (pi/2) expression dips under near 0
    if kind == "b_upper_1_6":
        fam = bnd.thm2(bnd.ONE_SIXTH - epsilon)
        ladder = [1 - mpf(10) ** -k for k in range(1, 13)]
    else:
        fam = bnd.thm2_reversed(bnd.B_STAR + epsilon)
        ladder = [mpf(10) ** -k for k in range(1, 13)]
    worst = math.inf
    witness = None
    with hp_context(digits):
        for xm in ladder:
            ref = acos_mp(xm)
            _, up = fam.pair_mp(xm)
            margin = float((up - ref) / ref)
            worst = min(worst, margin)
            if margin <= 0.0 and witness is None:
                witness = (float(xm), f"{fam.id} upper bound violated, margin {margin!r}")
    return VerificationReport(
        check_id=f"sharpness:{kind}",
        samples=len(ladder),
        worst_margin=worst,
        passed=witness is not None,
        witnesses=[witness] if witness is not None else [],
    )


# ---------------------------------------------------------------------------
# algebraic identities and the mutual-tightness structure of the four bounds

# expected relation of corresponding sides across the four concrete double
# inequalities: two stated coincidences, one stated one-way dominance (plus
# its mirror through the coincident side), everything else two-way
def _comparisons():
    c, t2, tr, t3 = bnd.carlson(), bnd.thm2(bnd.ONE_SIXTH), bnd.thm2_reversed(bnd.B_STAR), bnd.thm3()
    return [
        ("upper", c, t2, "equal"),
        ("lower", c, t3, "equal"),
        ("lower", c, tr, "first_tighter"),
        ("lower", t3, tr, "first_tighter"),
        ("lower", c, t2, "two_way"),
        ("lower", t2, tr, "two_way"),
        ("lower", t2, t3, "two_way"),
        ("upper", c, tr, "two_way"),
        ("upper", c, t3, "two_way"),
        ("upper", t2, tr, "two_way"),
        ("upper", t2, t3, "two_way"),
        ("upper", tr, t3, "two_way"),
    ]


def _side_mp(fam: bnd.BoundFamily, side: str, x: mpf) -> mpf:
    lo, up = fam.pair_mp(x)
    return lo if side == "lower" else up


def check_identities(n: int, seed: int = 0, digits: int | None = None) -> VerificationReport:
    """Discriminant identity plus the coincidence/dominance/two-way structure."""
    if n < 1000:
        raise ValueError(f"need n >= 1000 samples, got {n}")
    if digits is None:
        digits = default_digits()
    rng = random.Random(seed)
    margins = []
    witnesses = []

    # (i) closed discriminant form vs quadratic-coefficient form
    from .classifier import extrema_points

    disc_worst = math.inf
    count = 0
    while count < n:
        a = rng.uniform(-1.0, 1.0)
        b = rng.uniform(-1.0, 1.0)
        if abs(a - b) < 1e-6:
            continue  # the quadratic degenerates at a = b
        count += 1
        rep = extrema_points(Params(a, b))
        allowance = 1e-10 * max(1.0, abs(rep.disc_closed))
        margin = allowance - abs(rep.disc_closed - rep.disc_quadratic)
        disc_worst = min(disc_worst, margin)
        if margin <= 0.0:
            witnesses.append(([a, b], f"discriminant forms differ by {abs(rep.disc_closed - rep.disc_quadratic)!r}"))
    margins.append(disc_worst)

    # (ii)+(iii) side-by-side structure of the four concrete inequalities
    grid_d = [i / 200 for i in range(1, 200)]
    with hp_context(digits):
        eq_pts = [mpf(i) / 1000 for i in range(1, 1000)]
        for side, fa, fb, relation in _comparisons():
            if relation == "equal":
                worst = math.inf
                for xm in eq_pts:
                    va, vb = _side_mp(fa, side, xm), _side_mp(fb, side, xm)
                    margin = 1e-12 - float(abs(va - vb) / va)
                    worst = min(worst, margin)
                    if margin <= 0.0:
                        witnesses.append((float(xm), f"{side}:{fa.id} vs {fb.id} not coincident"))
                        break
                margins.append(worst)
            elif relation == "first_tighter":
                worst = math.inf
                for xm in eq_pts[::5]:
                    va, vb = _side_mp(fa, side, xm), _side_mp(fb, side, xm)
                    margin = float((va - vb) / va)  # lower bounds: bigger is tighter
                    worst = min(worst, margin)
                    if margin <= 0.0:
                        witnesses.append((float(xm), f"{side}:{fa.id} fails to dominate {fb.id}"))
                        break
                margins.append(worst)
            else:  # two_way
                a_pt = b_pt = None
                for x in grid_d:
                    xm = mpf(x)
                    va, vb = _side_mp(fa, side, xm), _side_mp(fb, side, xm)
                    tighter_a = va > vb if side == "lower" else va < vb
                    sep = float(abs(va - vb) / va)
                    if sep < 1e-14:
                        continue
                    if tighter_a and a_pt is None:
                        a_pt = (x, sep)
                    if not tighter_a and b_pt is None:
                        b_pt = (x, sep)
                    if a_pt and b_pt:
                        break
                if a_pt is None or b_pt is None:
                    witnesses.append(
                        ([0.0, 0.0], f"{side}:{fa.id} vs {fb.id}: no two-way witnesses found")
                    )
                    margins.append(-1.0)
                else:
                    margins.append(min(a_pt[1], b_pt[1]))
    return VerificationReport(
        check_id="identities",
        samples=n + 999 + len(grid_d),
        worst_margin=min(margins),
        passed=not witnesses,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# full suite


def default_suite(seed: int = 0, digits: int | None = None) -> list[VerificationReport]:
    """Every check at default sizes, deterministic in (seed, digits)."""
    if digits is None:
        digits = default_digits()
    reports = [
        check_double_inequality(bnd.carlson(), 2000, 10, seed=seed, digits=digits),
        check_double_inequality(bnd.thm2(bnd.ONE_SIXTH), 2000, 10, seed=seed, digits=digits),
        check_double_inequality(bnd.thm2(0.2), 2000, 10, seed=seed, digits=digits),
        check_double_inequality(bnd.thm2(0.5), 2000, 10, seed=seed, digits=digits),
        check_double_inequality(bnd.thm2_reversed(bnd.B_STAR), 2000, 10, seed=seed, digits=digits),
        check_double_inequality(bnd.thm3(), 2000, 10, seed=seed, digits=digits),
        check_class(Params(0.0, 0.0), RegionClass.STRICTLY_DECREASING, 1024, digits),
        check_class(Params(0.6, 0.3), RegionClass.STRICTLY_INCREASING, 1024, digits),
        check_class(Params(0.5, 0.14), RegionClass.UNIQUE_MAX, 2048, digits),
        check_class(Params(0.51, 0.12), RegionClass.UNIQUE_MIN, 2048, digits),
        check_class(Params(0.51375, 0.12375), RegionClass.MAX_THEN_MIN, 4096, digits),
        check_sign_chain(1000, digits),
        check_sharpness("b_upper_1_6", 1e-3, digits),
        check_sharpness("b_lower_2pi", 1e-3, digits),
        check_sharpness("thm3_constants", 1e-6, digits),
        check_identities(2000, seed=seed, digits=digits),
    ]
    return reports


def suite_passed(reports: list[VerificationReport]) -> bool:
    return all(r.passed for r in reports)
