"""Certified suprema of the envelope integrals: the bigness thresholds.

For a place shape and offset gamma the goal is a rigorous bound

    sup over lam >= gamma/3 of 6*psi(lam)  <  51.

The slope axis splits into three regimes.  The lower regime is handled by a
monotonicity proof (the cleared derivative has no roots), the middle regime
by the sign cascade phi''' -> phi'' -> phi' -> phi locating the unique
interior maximum (then bounded by exact interval arithmetic over an isolated
root bracket), and the unbounded tail by a decreasing proof plus the value at
the regime boundary.  Whenever a cascade step cannot pin the sign pattern the
engine falls back to exhaustive critical-point analysis, which is always
rigorous, and the certificate records the method used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import (
    Interval,
    POS_INF,
    Poly,
    QRat,
    cauchy_root_bound,
    count_roots,
    grid_bracket,
    isolate_all_roots,
    isolate_root,
    qrat,
    reduce_rational,
    sup_on_closed_interval,
    sup_rational_bound,
)
from .phi import IdentityViolation, PhiParams, build_f, build_phi
from .profiles import (
    CHAIN,
    DEGENERATE,
    NON_EXCEPTIONAL,
    EtaProfile,
    PlaceShape,
    psi6_at_minimal_slope,
    psi6_closed,
)

THRESHOLD = Fraction(51)

ALL_POS = "all_positive"
ALL_NEG = "all_negative"
NEG_POS = "neg_to_pos"
POS_NEG = "pos_to_neg"
AMBIGUOUS = "ambiguous"


class NotApplicableError(ValueError):
    """The closed-form threshold does not govern this shape."""


@dataclass(frozen=True)
class RegimeReport:
    """One certified regime: interval, proof method and a sound sup bound."""

    lo: QRat
    hi: Optional[QRat]  # None = unbounded tail
    method: str
    bound: QRat
    bracket: Optional[Interval] = None


@dataclass(frozen=True)
class BignessCertificate:
    shape: PlaceShape
    gamma: QRat
    regimes: tuple[RegimeReport, ...]
    sup_bound: QRat
    passed: bool
    max_bracket: Optional[Interval] = None
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.passed != (self.sup_bound < THRESHOLD):
            raise IdentityViolation("certificate pass flag inconsistent with bound")


def _sign(v: QRat) -> int:
    return (v > 0) - (v < 0)


def _pattern_from_endpoints(prev: str, s_lo: int, s_hi: int) -> str:
    """Sign pattern of g on [c,d] given the pattern of g' and endpoint signs."""
    if s_lo == 0 or s_hi == 0:
        return AMBIGUOUS
    if prev == ALL_POS:  # increasing
        if s_lo > 0:
            return ALL_POS
        return NEG_POS if s_hi > 0 else ALL_NEG
    if prev == ALL_NEG:  # decreasing
        if s_lo < 0:
            return ALL_NEG
        return POS_NEG if s_hi < 0 else ALL_POS
    if prev == NEG_POS:  # decreases, then increases
        if s_lo < 0:
            return ALL_NEG if s_hi < 0 else NEG_POS
        if s_hi < 0:
            return POS_NEG
        return AMBIGUOUS
    if prev == POS_NEG:  # increases, then decreases
        if s_lo > 0:
            return ALL_POS if s_hi > 0 else POS_NEG
        if s_hi > 0:
            return NEG_POS
        return AMBIGUOUS
    return AMBIGUOUS


def cascade_phi_pattern(params: PhiParams, lo: QRat, hi: QRat) -> tuple[str, list[str]]:
    """Determine the sign pattern of phi on [lo, hi] by the cascade method.

    Walks phi''' (linear, increasing), phi'' (quadratic, exact vertex check
    when the endpoints are ambiguous), phi', then phi, propagating shape
    information exactly as the case analyses do.  Returns the pattern and a
    step-by-step trace; AMBIGUOUS means the cascade is inapplicable.
    """
    phi = build_phi(params)
    d1 = phi.derivative()
    d2 = d1.derivative()
    d3 = d2.derivative()
    trace: list[str] = []

    s_lo, s_hi = _sign(d3(lo)), _sign(d3(hi))
    if s_lo > 0:
        pat = ALL_POS
    elif s_hi < 0:
        pat = ALL_NEG
    elif s_lo < 0 < s_hi:
        pat = NEG_POS
    else:
        return AMBIGUOUS, ["phi''' endpoint sign vanishes"]
    trace.append(f"phi''': {pat}")

    s_lo, s_hi = _sign(d2(lo)), _sign(d2(hi))
    nxt = _pattern_from_endpoints(pat, s_lo, s_hi)
    if nxt == AMBIGUOUS and pat == NEG_POS and s_lo > 0 and s_hi > 0:
        # quadratic with interior vertex at the root of the linear phi'''
        vertex = -d3.coeffs[0] / d3.coeffs[1]
        vmin = d2(vertex)
        if vmin > 0:
            nxt = ALL_POS
        trace.append(f"phi'' vertex value sign {_sign(vmin)}")
    if nxt == AMBIGUOUS:
        return AMBIGUOUS, trace + ["phi'' pattern ambiguous"]
    pat = nxt
    trace.append(f"phi'': {pat}")

    s_lo, s_hi = _sign(d1(lo)), _sign(d1(hi))
    pat = _pattern_from_endpoints(pat, s_lo, s_hi)
    if pat == AMBIGUOUS:
        return AMBIGUOUS, trace + ["phi' pattern ambiguous"]
    trace.append(f"phi': {pat}")

    s_lo, s_hi = _sign(phi(lo)), _sign(phi(hi))
    if s_lo == 0 and s_hi < 0:
        # maximum sits exactly at the left endpoint: phi <= 0 with a single
        # touch; confirmed by a root count on the half-open interval
        if count_roots(phi, lo, hi) == 0:
            trace.append("phi: zero at left endpoint, negative beyond")
            return ALL_NEG, trace
    pat = _pattern_from_endpoints(pat, s_lo, s_hi)
    trace.append(f"phi: {pat}")
    if pat == AMBIGUOUS:
        return AMBIGUOUS, trace
    return pat, trace


def _verify_pattern_with_sturm(phi: Poly, pat: str, lo: QRat, hi: QRat) -> None:
    """Cross-check a cascade conclusion against Sturm root counts."""
    interior = count_roots(phi, lo, hi) - (1 if phi(hi) == 0 else 0) - (0 if phi(lo) != 0 else 0)
    s_lo, s_hi = _sign(phi(lo)), _sign(phi(hi))
    ok = True
    if pat in (ALL_POS, ALL_NEG):
        ok = interior == 0
    elif pat in (POS_NEG, NEG_POS):
        ok = interior == 1 and s_lo * s_hi < 0
    if not ok:
        raise IdentityViolation(
            f"cascade pattern {pat} contradicts Sturm count {interior} on [{lo},{hi}]"
        )


def _tail_certificate(
    gamma: QRat, den3: Poly, start: QRat, budget: int
) -> tuple[QRat, str]:
    """Sup of (3t-g)^3/den3 on [start, infinity): decreasing proof or
    critical-point analysis, plus the exact limit at infinity."""
    num3 = Poly.make([-gamma, 3]) ** 3
    rnum, rden = reduce_rational(num3, den3)
    val_start = rnum(start) / rden(start)
    n = num3.derivative() * den3 - num3 * den3.derivative()
    if not n.is_zero and count_roots(n, start, POS_INF) == 0 and n(start + 1) < 0:
        return val_start, "monotone-decreasing"
    limit = num3.leading / den3.leading  # degrees match (both cubic)
    cands = [val_start, limit]
    right = max(start, cauchy_root_bound(n)) + 1
    for br in isolate_all_roots(n, Interval(start, right)):
        if br.width == 0:
            cands.append(rnum(br.lo) / rden(br.lo))
        else:
            cands.append(sup_rational_bound(rnum, rden, br, budget))
    return max(cands), "critical-points"


def _value(shape: PlaceShape, gamma: QRat, lam: QRat) -> QRat:
    return psi6_closed(EtaProfile(lam, gamma), shape)


def certify_place(
    shape: PlaceShape,
    gamma,
    bisect_width=Fraction(1, 1000),
    budget: int = 64,
) -> BignessCertificate:
    """Certify sup over lam >= gamma/3 of the six-fold limit coefficient."""
    g = qrat(gamma)
    bisect_width = qrat(bisect_width)
    if g <= 0:
        raise ValueError("gamma must be positive")
    if g >= 3 * shape.beta:
        raise NotApplicableError("offset at least 3*beta leaves no admissible regime")
    start = g / 3
    regimes: list[RegimeReport] = []
    notes: list[str] = []
    bracket: Optional[Interval] = None

    if shape.kind == NON_EXCEPTIONAL:
        boundary = 3 - 2 * g / 3
        if boundary > start:
            t = Poly.x()
            num = (Poly.make([-g, 3]) ** 3).scale(8) - (t * t) * Poly.make([9 - 2 * g, -3]) ** 3
            den = (t * t * Poly.make([-1, 1])).scale(8)
            sup_a = sup_on_closed_interval(num, den, Interval(start, boundary), budget)
            regimes.append(RegimeReport(start, boundary, "critical-points", sup_a))
        tail_start = max(start, boundary)
        den3 = Poly.make([0, 0, -1, 1])  # t^2 (t-1)
        sup_b, how = _tail_certificate(g, den3, tail_start, budget)
        regimes.append(RegimeReport(tail_start, None, how, sup_b))
    else:
        a, b = shape.alpha, shape.beta
        c, d = 3 * a - 2 * g / 3, 3 * b - 2 * g / 3
        if c > start:
            # psi decreases on [g/3, c] because (3t/2+g)^3/(ab t) increases:
            # its cleared derivative (3t/2+g)^2 (3t-g) has no root past g/3
            p = (Poly.make([g, Fraction(3, 2)]) ** 2) * Poly.make([-g, 3])
            if count_roots(p, start, c) == 0 and p(c) > 0:
                regimes.append(
                    RegimeReport(start, c, "monotone-decreasing", psi6_at_minimal_slope(shape, g))
                )
            else:
                t = Poly.x()
                num = t.scale(Fraction(729, 8) * a * b) - Poly.make([g, Fraction(3, 2)]) ** 3
                den = t.scale(a * b)
                sup1 = sup_on_closed_interval(num, den, Interval(start, c), budget)
                regimes.append(RegimeReport(start, c, "critical-points", sup1))
        if shape.kind == CHAIN and d > max(start, c):
            lo2 = max(start, c)
            params = PhiParams(a, b, g)
            if params.epsilon > 3:
                pat, trace = AMBIGUOUS, [f"epsilon {params.epsilon} > 3: cascade skipped"]
            else:
                pat, trace = cascade_phi_pattern(params, lo2, d)
            notes.extend(trace)
            num, den = build_f(params)
            phi = build_phi(params)
            if pat != AMBIGUOUS:
                _verify_pattern_with_sturm(phi, pat, lo2, d)
            if pat == ALL_NEG:
                regimes.append(
                    RegimeReport(lo2, d, "cascade: decreasing", _value(shape, g, lo2))
                )
            elif pat == ALL_POS:
                regimes.append(
                    RegimeReport(lo2, d, "cascade: increasing", _value(shape, g, d))
                )
            elif pat == NEG_POS:
                bound = max(_value(shape, g, lo2), _value(shape, g, d))
                regimes.append(RegimeReport(lo2, d, "cascade: endpoint max", bound))
            elif pat == POS_NEG:
                rough = isolate_root(phi, Interval(lo2, d), bisect_width)
                if bisect_width.numerator == 1:
                    try:
                        rough = grid_bracket(phi, rough, bisect_width.denominator)
                    except Exception:
                        pass
                bracket = rough
                rnum, rden = reduce_rational(num, den)
                bound = sup_rational_bound(rnum, rden, bracket, budget)
                regimes.append(
                    RegimeReport(lo2, d, "cascade: interior max", bound, bracket)
                )
            else:
                rnum, rden = reduce_rational(num, den)
                bound = sup_on_closed_interval(rnum, rden, Interval(lo2, d), budget)
                regimes.append(RegimeReport(lo2, d, "interval-fallback", bound))
        tail_start = max(start, d)
        den3 = Poly.x() * Poly.make([-a, 1]) * Poly.make([-b, 1])
        sup3, how = _tail_certificate(g, den3, tail_start, budget)
        regimes.append(RegimeReport(tail_start, None, how, sup3))

    sup_bound = max(r.bound for r in regimes)
    return BignessCertificate(
        shape=shape,
        gamma=g,
        regimes=tuple(regimes),
        sup_bound=sup_bound,
        passed=sup_bound < THRESHOLD,
        max_bracket=bracket,
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# closed-form minimal offsets


def _isqrt_floor(x: Fraction) -> int:
    """Largest integer n with n^2 <= x (x >= 0)."""
    n = math.isqrt(x.numerator // x.denominator)
    while (n + 1) * (n + 1) <= x:
        n += 1
    while n * n > x:
        n -= 1
    return n


@dataclass(frozen=True)
class GammaThreshold:
    """The minimal offset gamma* with gamma*^2 = 107*alpha*beta/27, kept as an
    exact squared value; comparisons never materialize the radical."""

    shape: PlaceShape
    squared: Fraction

    def exceeded_by(self, gamma) -> bool:
        g = qrat(gamma)
        return g > 0 and g * g > self.squared

    def met_by(self, gamma) -> bool:
        g = qrat(gamma)
        return g > 0 and g * g >= self.squared

    def grid_above(self, step=Fraction(1, 1000)) -> Fraction:
        """Least multiple of ``step`` strictly above gamma*."""
        step = qrat(step)
        k = _isqrt_floor(self.squared / (step * step))
        while Fraction(k * k) * step * step <= self.squared:
            k += 1
        return k * step

    def grid_below(self, step=Fraction(1, 1000)) -> Fraction:
        """Greatest multiple of ``step`` strictly below gamma*."""
        step = qrat(step)
        k = _isqrt_floor(self.squared / (step * step)) + 1
        while Fraction(k * k) * step * step >= self.squared:
            k -= 1
        return k * step


def radical_grid_above(product: int, step=Fraction(1, 1000)) -> Fraction:
    """Least multiple of ``step`` strictly above sqrt(321*product)/9."""
    return GammaThreshold(PlaceShape.degenerate(), Fraction(321 * product, 81)).grid_above(step)


def minimal_gamma(shape: PlaceShape) -> GammaThreshold:
    """Threshold gamma* for shapes whose envelope integral is maximal at the
    minimal slope (the decreasing families); then

        6*psi(gamma/3) = (81/8)(9 - gamma^2/(alpha*beta)) < 51
                       iff gamma^2 > 107*alpha*beta/27.

    Shapes whose interior maximum governs (the (1,n) chains for n >= 3) do
    not have this property; ask certify_place with an explicit gamma instead.
    """
    if shape.kind == NON_EXCEPTIONAL:
        raise NotApplicableError("non-exceptional places use the fixed offset analysis")
    decreasing = (
        shape.kind == DEGENERATE
        or shape.alpha >= 2
        or (shape.alpha, shape.beta) == (1, 2)
    )
    if not decreasing:
        raise NotApplicableError(
            f"interior maximum governs {shape}; use certify_place with explicit gamma"
        )
    return GammaThreshold(shape, Fraction(107) * shape.alpha * shape.beta / 27)


# ---------------------------------------------------------------------------
# the threshold table


@dataclass(frozen=True)
class ThresholdEntry:
    entry_id: str
    shape: PlaceShape
    gamma: QRat
    certificate: BignessCertificate
    radical_squared: Optional[Fraction] = None  # gamma*^2 when gamma came from a radical


def threshold_table(
    gamma_margin=Fraction(1, 1000),
    bisect_width=Fraction(1, 1000),
    budget: int = 64,
) -> list[ThresholdEntry]:
    """Certify every bigness threshold the case ledger consumes.

    Radical thresholds are certified at the least multiple of gamma_margin
    strictly above gamma*; fixed decimal thresholds at their stated values.
    """
    gamma_margin = qrat(gamma_margin)
    entries: list[ThresholdEntry] = []

    def add(entry_id: str, shape: PlaceShape, gamma: QRat, squared=None) -> None:
        cert = certify_place(shape, gamma, bisect_width, budget)
        entries.append(ThresholdEntry(entry_id, shape, gamma, cert, squared))

    def add_radical(entry_id: str, shape: PlaceShape) -> None:
        th = minimal_gamma(shape)
        add(entry_id, shape, th.grid_above(gamma_margin), th.squared)

    add_radical("3.10;1", PlaceShape.degenerate())
    add_radical("3.10;2", PlaceShape.chain(1, 2))
    add("3.10;3", PlaceShape.chain(1, 3), qrat("3.51"))
    add("3.10;4", PlaceShape.chain(1, 4), qrat("4.23"))
    add("3.10;5", PlaceShape.chain(1, 5), qrat("5"))
    add("3.19;1", PlaceShape.chain(2, 5), qrat("6.31"))
    add("3.19;2", PlaceShape.chain(3, 7), qrat("9.13"))
    add("3.19;3", PlaceShape.chain(4, 9), qrat("12"))
    for j in range(2, 14):
        add_radical(f"3.23;j{j}", PlaceShape.chain(j, j + 1))
    for j in range(2, 9):
        for k in range(2, 13):
            add_radical(f"3.30;j{j}k{k}", PlaceShape.chain((j - 1) * k + 1, j * k + 1))
    for j, l in ((2, 2), (2, 3), (3, 2), (3, 3)):
        add_radical(f"3.43;j{j}l{l}", PlaceShape.chain(j * l + j - 1, j * l + l + j))
    return entries


# ---------------------------------------------------------------------------
# the sigma hypotheses


@dataclass(frozen=True)
class SigmaCheck:
    passed: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.passed


def theorem0_sigma_check(sigma1, sigma2_squared, sigma3) -> SigmaCheck:
    """Exact check of the hypothesis system on (s1, s2^2, s3):

        s3 > 3,   s1 >= max(2s3/(s3-1), s3/(s3-3)),
        s2^2 >= max((2s3/(s3-1))^2, 2 s3^2/(s3-2)^2).

    All checks are performed on squares; no radicals are formed.
    """
    s1, s2sq, s3 = qrat(sigma1), qrat(sigma2_squared), qrat(sigma3)
    if s3 <= 3:
        return SigmaCheck(False, "Sigma3TooSmall")
    ratio = 2 * s3 / (s3 - 1)
    if s1 < max(ratio, s3 / (s3 - 3)):
        return SigmaCheck(False, "Sigma1TooSmall")
    if s2sq < max(ratio * ratio, 2 * s3 * s3 / (s3 - 2) ** 2):
        return SigmaCheck(False, "Sigma2TooSmall")
    return SigmaCheck(True)
