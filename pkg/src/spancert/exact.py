"""Exact rational arithmetic substrate.

Rational scalars are ``fractions.Fraction`` (aliased ``QRat``): arbitrary
precision, always reduced, positive denominator.  Decimal strings such as
``"4.23"`` parse to the exact fraction 423/100.

On top of that this module provides dense univariate polynomials over the
rationals, piecewise polynomials with exact definite integration, Sturm
sequences, certified root isolation, sign classification on intervals, and
rigorous suprema of rational functions via exact interval arithmetic.  No
floating point is used anywhere.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

QRat = Fraction

#: Sentinels for unbounded interval ends in Sturm queries.
POS_INF = "+inf"
NEG_INF = "-inf"

Endpoint = Union[Fraction, str]


class DomainError(ValueError):
    """An argument lies outside the domain an operation was defined for."""


class NoRootError(ValueError):
    """Root isolation was requested on an interval with no sign change."""


class AmbiguousRootError(ValueError):
    """Root isolation found more than one root in the search interval."""


class PoleInIntervalError(ValueError):
    """The denominator of a rational function vanishes in the interval."""


def qrat(value: Union[int, str, Fraction]) -> Fraction:
    """Parse an exact rational from an int, Fraction, decimal or a/b string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(str(value).strip())


def qrat_str(q: Fraction) -> str:
    """Serialize exactly; inverse of :func:`qrat` for round-trips."""
    return str(q)


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise DomainError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def interval(lo, hi) -> Interval:
    return Interval(qrat(lo), qrat(hi))


@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial, coefficients ascending, trailing zeros stripped."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def make(coeffs: Iterable[Union[int, str, Fraction]]) -> "Poly":
        cs = [qrat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Poly(tuple(cs))

    @staticmethod
    def const(c) -> "Poly":
        return Poly.make([c])

    @staticmethod
    def x() -> "Poly":
        return Poly.make([0, 1])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return self.coeffs[-1]

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return Poly.make([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly.make(out)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise DomainError("negative polynomial power")
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "Poly":
        c = qrat(c)
        return Poly.make([a * c for a in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly.make([i * c for i, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "Poly":
        return Poly.make([Fraction(0)] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q: list[Fraction] = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        r = list(self.coeffs)
        d = other.degree
        lc = other.leading
        while len(r) - 1 >= d and any(c != 0 for c in r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < d:
                break
            k = len(r) - 1 - d
            f = r[-1] / lc
            q[k] = f
            for i, c in enumerate(other.coeffs):
                r[k + i] -= f * c
        return Poly.make(q), Poly.make(r)

    def rem(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    def sign_at(self, x: Endpoint) -> int:
        """Sign of the polynomial at a rational point or at +/-infinity."""
        if self.is_zero:
            return 0
        if x == POS_INF:
            return 1 if self.leading > 0 else -1
        if x == NEG_INF:
            s = 1 if self.leading > 0 else -1
            return s if self.degree % 2 == 0 else -s
        v = self(x)
        return (v > 0) - (v < 0)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            parts.append(f"{c}*x^{i}" if i else f"{c}")
        return " + ".join(parts)


def poly_eval(p: Poly, x) -> Fraction:
    """Exact value p(x)."""
    return p(qrat(x))


def poly_derive(p: Poly) -> Poly:
    """Formal derivative."""
    return p.derivative()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero:
        a, b = b, a.rem(b)
    return a.monic() if not a.is_zero else a


def squarefree_part(p: Poly) -> Poly:
    """p / gcd(p, p'), monic: same distinct roots, all simple."""
    if p.degree <= 0:
        return p.monic() if not p.is_zero else p
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.monic()
    q, r = p.divmod(g)
    assert r.is_zero
    return q.monic()


def sturm_chain(p: Poly) -> list[Poly]:
    """Sturm chain of the squarefree part of p."""
    q = squarefree_part(p)
    if q.is_zero or q.degree == 0:
        return [q]
    chain = [q, q.derivative()]
    while not chain[-1].is_zero:
        chain.append(-chain[-2].rem(chain[-1]))
    chain.pop()
    return chain


def _variations(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a * b < 0)


def count_roots(p: Poly, lo: Endpoint, hi: Endpoint, chain: Optional[list[Poly]] = None) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi].

    Endpoints may be ``NEG_INF`` / ``POS_INF``.
    """
    if p.is_zero:
        raise DomainError("root count of the zero polynomial")
    ch = chain if chain is not None else sturm_chain(p)
    va = _variations([q.sign_at(lo) for q in ch])
    vb = _variations([q.sign_at(hi) for q in ch])
    return va - vb


def isolate_root(p: Poly, search: Interval, width) -> Interval:
    """Shrink ``search`` around its unique root to an interval of width <= width.

    Preconditions are *checked*: opposite signs at the endpoints and a Sturm
    count of exactly one root.  The returned bracket has opposite endpoint
    signs and width at most ``width``.
    """
    width = qrat(width)
    if width <= 0:
        raise DomainError("width must be positive")
    slo, shi = p.sign_at(search.lo), p.sign_at(search.hi)
    n = count_roots(p, search.lo, search.hi)
    if slo * shi >= 0:
        if n == 0:
            raise NoRootError(f"no sign change of {p} on {search}")
        raise AmbiguousRootError(f"{n} roots but no sign change of {p} on {search}")
    if n != 1:
        raise AmbiguousRootError(f"{n} roots of {p} in {search}")
    a, b, sa = search.lo, search.hi, slo
    while b - a > width:
        m = (a + b) / 2
        sm = p.sign_at(m)
        if sm == 0:
            # exact rational root: return a tight bracket straddling it
            lo2 = max(a, m - width / 2)
            hi2 = min(b, m + width / 2)
            return Interval(lo2, hi2)
        if sm == sa:
            a = m
        else:
            b = m
    return Interval(a, b)


def grid_bracket(p: Poly, rough: Interval, denom: int = 1000) -> Interval:
    """Align a single-root bracket to the 1/denom grid: [k/denom, (k+1)/denom].

    The root must be unique in ``rough`` and not itself a grid point.
    """
    k = (rough.lo * denom).__floor__()
    khi = (rough.hi * denom).__ceil__()
    prev = p.sign_at(Fraction(k, denom))
    if prev == 0:
        raise AmbiguousRootError("root lies exactly on the grid")
    for j in range(k + 1, khi + 1):
        s = p.sign_at(Fraction(j, denom))
        if s == 0:
            raise AmbiguousRootError("root lies exactly on the grid")
        if s * prev < 0:
            return Interval(Fraction(j - 1, denom), Fraction(j, denom))
        prev = s
    raise NoRootError(f"no grid sign change for {p} near {rough}")


@dataclass(frozen=True)
class SignReport:
    """Certified sign classification of a polynomial on a closed interval."""

    kind: str  # "all_positive" | "all_negative" | "changes_once" | "mixed"
    bracket: Optional[Interval] = None

    @property
    def all_positive(self) -> bool:
        return self.kind == "all_positive"

    @property
    def all_negative(self) -> bool:
        return self.kind == "all_negative"

    @property
    def changes_once(self) -> bool:
        return self.kind == "changes_once"


def sign_on_interval(p: Poly, iv: Interval, bracket_width=Fraction(1, 1000)) -> SignReport:
    """Classify the sign of p on iv, certified by Sturm counts + endpoint signs.

    A single crossing is reported as a bracket aligned to the 1/bracket_width
    grid when possible (matching decimal bracket conventions), else as a raw
    bisection bracket of the requested width.
    """
    if p.is_zero:
        return SignReport("mixed")
    slo, shi = p.sign_at(iv.lo), p.sign_at(iv.hi)
    if slo == 0 or shi == 0:
        return SignReport("mixed")
    n = count_roots(p, iv.lo, iv.hi)
    if n == 0:
        return SignReport("all_positive" if slo > 0 else "all_negative")
    if n == 1 and slo * shi < 0:
        bw = qrat(bracket_width)
        rough = isolate_root(p, iv, bw)
        if bw.numerator == 1:
            try:
                return SignReport("changes_once", grid_bracket(p, rough, bw.denominator))
            except AmbiguousRootError:
                pass
        return SignReport("changes_once", rough)
    return SignReport("mixed")


def isolate_all_roots(p: Poly, iv: Interval, width=Fraction(1, 1000)) -> list[Interval]:
    """Disjoint brackets, one per distinct root of p in the open interval (lo, hi).

    Exact rational roots are returned as degenerate brackets [r, r].
    """
    width = qrat(width)
    q = squarefree_part(p)
    if q.degree <= 0:
        return []
    chain = sturm_chain(q)

    out: list[Interval] = []

    def rec(a: Fraction, b: Fraction) -> None:
        n = count_roots(q, a, b, chain) - (1 if q(b) == 0 else 0)
        if n == 0:
            return
        if n == 1 and q(a) * q(b) < 0 and b - a <= width:
            out.append(Interval(a, b))
            return
        m = (a + b) / 2
        if q(m) == 0:
            out.append(Interval(m, m))
            rec(a, m)
            rec(m, b)
            return
        if n == 1 and q(a) * q(b) < 0:
            # plain bisection refinement
            if q(a) * q(m) < 0:
                rec(a, m)
            else:
                rec(m, b)
            return
        rec(a, m)
        rec(m, b)

    rec(iv.lo, iv.hi)
    out.sort(key=lambda br: br.lo)
    return out


def poly_nonneg_on(p: Poly, lo, hi: Endpoint = POS_INF) -> bool:
    """Certify p(x) >= 0 for all x in [lo, hi] (hi may be POS_INF)."""
    return _poly_semidefinite(p, qrat(lo), hi, +1)


def poly_nonpos_on(p: Poly, lo, hi: Endpoint = POS_INF) -> bool:
    """Certify p(x) <= 0 for all x in [lo, hi] (hi may be POS_INF)."""
    return _poly_semidefinite(p, qrat(lo), hi, -1)


def cauchy_root_bound(p: Poly) -> Fraction:
    """All real roots of p lie in (-B, B)."""
    if p.degree <= 0:
        return Fraction(1)
    lead = abs(p.leading)
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lead


def _poly_semidefinite(p: Poly, lo: Fraction, hi: Endpoint, sign: int) -> bool:
    if p.is_zero:
        return True
    if hi == POS_INF:
        if p.degree >= 1 and sign * p.leading < 0:
            return False
        right = max(lo, cauchy_root_bound(p)) + 1
    else:
        right = qrat(hi)
        if right < lo:
            raise DomainError("empty interval")
    # samples: endpoints plus separators between consecutive root brackets
    brackets = isolate_all_roots(p, Interval(lo, right), width=Fraction(1, 4))
    samples = [lo, right]
    pts = [lo] + [b.lo for b in brackets] + [b.hi for b in brackets] + [right]
    pts = sorted(set(pts))
    samples.extend(pts)
    samples.extend([(a + b) / 2 for a, b in zip(pts, pts[1:])])
    return all(sign * p(x) >= 0 for x in samples)


# ---------------------------------------------------------------------------
# exact interval arithmetic


def interval_eval(p: Poly, iv: Interval) -> Interval:
    """Enclosure of {p(x) : x in iv} by Horner evaluation in interval arithmetic."""
    lo = hi = Fraction(0)
    for c in reversed(p.coeffs):
        # [lo,hi] * [iv.lo, iv.hi] + c
        cands = (lo * iv.lo, lo * iv.hi, hi * iv.lo, hi * iv.hi)
        lo, hi = min(cands) + c, max(cands) + c
    return Interval(lo, hi)


def interval_div(num: Interval, den: Interval) -> Interval:
    if den.lo <= 0 <= den.hi:
        raise PoleInIntervalError("denominator enclosure contains zero")
    cands = (num.lo / den.lo, num.lo / den.hi, num.hi / den.lo, num.hi / den.hi)
    return Interval(min(cands), max(cands))


def _check_no_pole(den: Poly, iv: Interval) -> None:
    if den.is_zero:
        raise PoleInIntervalError("denominator is identically zero")
    if den(iv.lo) == 0 or count_roots(den, iv.lo, iv.hi) > 0:
        raise PoleInIntervalError(f"denominator {den} vanishes in {iv}")


def sup_rational_bound(num: Poly, den: Poly, iv: Interval, budget: int = 64) -> Fraction:
    """Rigorous upper bound for num(x)/den(x) on iv.

    Adaptive bisection with exact interval evaluation: the piece with the
    worst enclosure is split, at most ``budget`` times.  Result is always a
    sound upper bound; a larger budget only tightens it.
    """
    _check_no_pole(den, iv)

    def ub(piece: Interval) -> Fraction:
        return interval_div(interval_eval(num, piece), interval_eval(den, piece)).hi

    counter = 0
    heap = [(-ub(iv), counter, iv)]
    for _ in range(budget):
        worst, _, piece = heapq.heappop(heap)
        if piece.width == 0:
            heapq.heappush(heap, (worst, counter, piece))
            break
        left = Interval(piece.lo, piece.mid)
        right = Interval(piece.mid, piece.hi)
        for half in (left, right):
            counter += 1
            heapq.heappush(heap, (-ub(half), counter, half))
    return -min(heap)[0]


def reduce_rational(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Cancel the gcd of num and den (removes removable singularities)."""
    g = poly_gcd(num, den)
    if g.degree <= 0:
        return num, den
    qn, rn = num.divmod(g)
    qd, rd = den.divmod(g)
    assert rn.is_zero and rd.is_zero
    return qn, qd


def sup_on_closed_interval(num: Poly, den: Poly, iv: Interval, budget: int = 64) -> Fraction:
    """Certified sup of the rational function num/den over a closed interval.

    Common factors are cancelled first, so removable singularities are fine.
    The supremum is bracketed by endpoint values plus interval bounds over
    isolated critical points (roots of the derivative numerator).
    """
    num, den = reduce_rational(num, den)
    _check_no_pole(den, iv)
    vals = [num(iv.lo) / den(iv.lo), num(iv.hi) / den(iv.hi)]
    crit = num.derivative() * den - num * den.derivative()
    if not crit.is_zero:
        for br in isolate_all_roots(crit, iv):
            if br.width == 0:
                vals.append(num(br.lo) / den(br.lo))
            else:
                vals.append(sup_rational_bound(num, den, br, budget))
    return max(vals)


# ---------------------------------------------------------------------------
# piecewise polynomials


@dataclass(frozen=True)
class PiecewisePoly:
    """Polynomial pieces over consecutive intervals [b_i, b_{i+1}]."""

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Poly, ...]

    def __post_init__(self) -> None:
        if len(self.breakpoints) != len(self.pieces) + 1:
            raise DomainError("need exactly one more breakpoint than pieces")
        if any(a >= b for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise DomainError("breakpoints must be strictly increasing")

    @staticmethod
    def make(breakpoints: Sequence, pieces: Sequence[Poly]) -> "PiecewisePoly":
        return PiecewisePoly(tuple(qrat(b) for b in breakpoints), tuple(pieces))

    @property
    def domain(self) -> Interval:
        return Interval(self.breakpoints[0], self.breakpoints[-1])

    def __call__(self, x) -> Fraction:
        x = qrat(x)
        if not self.domain.contains(x):
            raise DomainError(f"{x} outside domain {self.domain}")
        for a, b, p in zip(self.breakpoints, self.breakpoints[1:], self.pieces):
            if x <= b:
                return p(x)
        return self.pieces[-1](x)

    def integrate(self, a, b) -> Fraction:
        """Exact definite integral over [a, b] within the domain."""
        a, b = qrat(a), qrat(b)
        if a > b:
            return -self.integrate(b, a)
        if not (self.domain.contains(a) and self.domain.contains(b)):
            raise DomainError(f"[{a}, {b}] outside domain {self.domain}")
        total = Fraction(0)
        for lo, hi, p in zip(self.breakpoints, self.breakpoints[1:], self.pieces):
            seg_lo, seg_hi = max(a, lo), min(b, hi)
            if seg_lo < seg_hi:
                anti = p.antiderivative()
                total += anti(seg_hi) - anti(seg_lo)
        return total


def integrate_piecewise(f: PiecewisePoly, a, b) -> Fraction:
    """Exact definite integral of a piecewise polynomial over [a, b]."""
    return f.integrate(a, b)
