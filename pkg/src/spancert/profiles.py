"""Lower-envelope profiles and the limit integrals they control.

An envelope eta(x) = max(0, lam*(x-3) + gamma) bounds the vanishing orders
entering the rank estimates.  For each place shape the cubic growth
coefficient is, in the limit, an explicit piecewise-polynomial integral;
``psi6_closed`` evaluates the closed forms (6x the limit) and
``psi6_by_integration`` rebuilds the same value by exact integration of the
piecewise integrand, so the two paths cross-check each other to equality.

``d_sum`` evaluates the finite sums d_i(s, m, lam) under the fractional-sum
convention  sum_{j=0}^{r} x_j = sum_{j=0}^{n} x_j + (r-n) x_{n+1},  n = Int(r),
which makes them continuous in s and m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import DomainError, PiecewisePoly, Poly, QRat, qrat, reduce_rational
from .phi import PhiParams, eval_f

NON_EXCEPTIONAL = "non_exceptional"
DEGENERATE = "degenerate"
CHAIN = "chain"

NINE_HALVES = Fraction(9, 2)


@dataclass(frozen=True)
class PlaceShape:
    """Quadratic-coefficient data (alpha, beta) for one place type.

    The middle-regime integrand carries 1/(2*alpha*beta) and the upper one
    1/(2*beta*(beta-alpha)); the non-exceptional and degenerate kinds have
    their own integrand families and keep alpha = beta = 1.
    """

    kind: str
    alpha: QRat = Fraction(1)
    beta: QRat = Fraction(1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", qrat(self.alpha))
        object.__setattr__(self, "beta", qrat(self.beta))
        if self.kind == CHAIN:
            if not (1 <= self.alpha < self.beta):
                raise DomainError(f"chain shape needs 1 <= alpha < beta, got {self}")
        elif self.kind in (DEGENERATE, NON_EXCEPTIONAL):
            if (self.alpha, self.beta) != (1, 1):
                raise DomainError(f"{self.kind} shape fixes alpha = beta = 1")
        else:
            raise DomainError(f"unknown shape kind {self.kind!r}")

    @staticmethod
    def non_exceptional() -> "PlaceShape":
        return PlaceShape(NON_EXCEPTIONAL)

    @staticmethod
    def degenerate() -> "PlaceShape":
        return PlaceShape(DEGENERATE)

    @staticmethod
    def chain(alpha, beta) -> "PlaceShape":
        alpha, beta = qrat(alpha), qrat(beta)
        if alpha == beta == 1:
            return PlaceShape.degenerate()
        return PlaceShape(CHAIN, alpha, beta)

    def __str__(self) -> str:
        if self.kind == CHAIN:
            return f"chain({self.alpha},{self.beta})"
        return self.kind


@dataclass(frozen=True)
class EtaProfile:
    """eta(x) = max(0, lam*(x-3) + gamma) with eta(0) = 0, i.e. lam >= gamma/3."""

    lam: QRat
    gamma: QRat

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", qrat(self.lam))
        object.__setattr__(self, "gamma", qrat(self.gamma))
        if self.gamma <= 0:
            raise DomainError("gamma must be positive")
        if self.lam < self.gamma / 3:
            raise DomainError(f"slope {self.lam} below gamma/3 = {self.gamma / 3}")

    @property
    def line(self) -> Poly:
        """The affine part lam*(x-3) + gamma."""
        return Poly.make([self.gamma - 3 * self.lam, self.lam])

    @property
    def kink(self) -> QRat:
        """Where the envelope leaves zero: x0 = 3 - gamma/lam >= 0."""
        return 3 - self.gamma / self.lam


def eta_eval(p: EtaProfile, x) -> QRat:
    """Exact envelope value at x >= 0."""
    x = qrat(x)
    if x < 0:
        raise DomainError("envelope is only defined for x >= 0")
    return max(Fraction(0), p.lam * (x - 3) + p.gamma)


@dataclass(frozen=True)
class RegimeBoundaries:
    """Where eta crosses 0, alpha*x and beta*x (absent if the slope is too small)."""

    x0: QRat
    t_alpha: Optional[QRat]
    t_beta: Optional[QRat]


def regime_boundaries(p: EtaProfile, shape: PlaceShape) -> RegimeBoundaries:
    lam, g = p.lam, p.gamma
    a, b = shape.alpha, shape.beta
    t_a = (3 * lam - g) / (lam - a) if lam > a else None
    t_b = (3 * lam - g) / (lam - b) if lam > b else None
    return RegimeBoundaries(x0=p.kink, t_alpha=t_a, t_beta=t_b)


def _eval_reduced(num: Poly, den: Poly, x: QRat) -> QRat:
    num, den = reduce_rational(num, den)
    d = den(x)
    if d == 0:
        raise DomainError(f"pole at {x}")
    return num(x) / d


def psi6_closed(p: EtaProfile, shape: PlaceShape) -> QRat:
    """Six times the limiting cubic coefficient, by the closed regime forms."""
    lam, g = p.lam, p.gamma
    t = Poly.x()
    if shape.kind == NON_EXCEPTIONAL:
        if lam <= 3 - 2 * g / 3:
            num = (Poly.make([-g, 3]) ** 3).scale(8) - (t * t) * Poly.make([9 - 2 * g, -3]) ** 3
            den = (t * t * Poly.make([-1, 1])).scale(8)
            return _eval_reduced(num, den, lam)
        if lam <= 1:
            raise DomainError("upper regime needs lam > 1")
        return (3 * lam - g) ** 3 / (lam**2 * (lam - 1))
    if shape.kind == DEGENERATE:
        if lam <= 3 - 2 * g / 3:
            return Fraction(729, 8) - (Fraction(3, 2) * lam + g) ** 3 / lam
        if lam <= 1:
            raise DomainError("upper regime needs lam > 1")
        return (3 * lam - g) ** 3 / (lam * (lam - 1) ** 2)
    a, b = shape.alpha, shape.beta
    c, d = 3 * a - 2 * g / 3, 3 * b - 2 * g / 3
    if lam <= c:
        return Fraction(729, 8) - (Fraction(3, 2) * lam + g) ** 3 / (a * b * lam)
    if lam <= d:
        return eval_f(PhiParams(a, b, g), lam)
    if lam <= b:
        raise DomainError("upper regime needs lam > beta")
    return (3 * lam - g) ** 3 / (lam * (lam - a) * (lam - b))


def psi6_integrand(p: EtaProfile, shape: PlaceShape) -> PiecewisePoly:
    """The piecewise polynomial 6 * (limit integrand) on [0, m] with the
    regime-appropriate upper limit m (9/2, or the crossing point)."""
    lam, g = p.lam, p.gamma
    eta = p.line
    x = Poly.x()
    x2_3 = Poly.make([0, 0, 3])
    x0 = max(Fraction(0), p.kink)
    bounds = regime_boundaries(p, shape)
    if shape.kind == NON_EXCEPTIONAL:
        mid = ((x - eta) ** 2).scale(3)
        if lam <= 3 - 2 * g / 3:
            m = NINE_HALVES
        else:
            if bounds.t_alpha is None:
                raise DomainError("upper regime needs lam > 1")
            m = bounds.t_alpha
        cuts = [Fraction(0), x0, m]
        pieces = [x2_3, mid]
    elif shape.kind == DEGENERATE:
        mid = (x2_3 - (eta * eta).scale(3))
        if lam <= 3 - 2 * g / 3:
            m = NINE_HALVES
        else:
            if bounds.t_beta is None:
                raise DomainError("upper regime needs lam > 1")
            m = bounds.t_beta
        cuts = [Fraction(0), x0, m]
        pieces = [x2_3, mid]
    else:
        a, b = shape.alpha, shape.beta
        mid = x2_3 - (eta * eta).scale(Fraction(3) / (a * b))
        top = ((x.scale(b) - eta) ** 2).scale(Fraction(3) / (b * (b - a)))
        c, d = 3 * a - 2 * g / 3, 3 * b - 2 * g / 3
        if lam <= c:
            cuts = [Fraction(0), x0, NINE_HALVES]
            pieces = [x2_3, mid]
        else:
            if bounds.t_alpha is None:
                raise DomainError("middle regime needs lam > alpha")
            m = NINE_HALVES if lam <= d else bounds.t_beta
            if m is None:
                raise DomainError("upper regime needs lam > beta")
            cuts = [Fraction(0), x0, bounds.t_alpha, m]
            pieces = [x2_3, mid, top]
    # drop zero-length pieces (kink at 0, or boundary coincidences)
    keep_cuts, keep_pieces = [cuts[0]], []
    for hi, piece in zip(cuts[1:], pieces):
        if hi > keep_cuts[-1]:
            keep_cuts.append(hi)
            keep_pieces.append(piece)
    return PiecewisePoly.make(keep_cuts, keep_pieces)


def psi6_by_integration(p: EtaProfile, shape: PlaceShape) -> QRat:
    """Same value as :func:`psi6_closed`, by exact piecewise integration."""
    f = psi6_integrand(p, shape)
    return f.integrate(f.domain.lo, f.domain.hi)


def psi6_at_minimal_slope(shape: PlaceShape, gamma) -> QRat:
    """Closed value at lam = gamma/3: (81/8) * (9 - gamma^2/(alpha*beta))."""
    g = qrat(gamma)
    return Fraction(81, 8) * (9 - g * g / (shape.alpha * shape.beta))


def _summand(order: int, x: QRat, p: EtaProfile, shape: PlaceShape) -> QRat:
    eta = eta_eval(p, x)
    if order == 1:
        return Fraction(1)
    if shape.kind == NON_EXCEPTIONAL:
        if order == 2:
            return Fraction(3, 2) * (x - eta)
        return Fraction(1, 2) * (x - eta) ** 2
    if shape.kind == DEGENERATE:
        if order == 2:
            return Fraction(3, 2) * x - Fraction(1, 2) * eta
        return Fraction(1, 2) * (x * x - eta * eta)
    a, b = shape.alpha, shape.beta
    if eta <= a * x:
        if order == 2:
            return Fraction(3, 2) * x - (a + b - 1) / (2 * a * b) * eta
        return Fraction(1, 2) * x * x - eta * eta / (2 * a * b)
    if eta <= b * x:
        if order == 2:
            return (2 * b - a + 1) * (b * x - eta) / (2 * b * (b - a))
        return (b * x - eta) ** 2 / (2 * b * (b - a))
    return Fraction(0)


def d_sum(order: int, s, m, p: EtaProfile, shape: PlaceShape) -> QRat:
    """Finite sum d_order(s, m, lam) under the fractional-sum convention."""
    if order not in (1, 2, 3):
        raise DomainError("order must be 1, 2 or 3")
    s, m = qrat(s), qrat(m)
    if s <= 0 or m <= 0:
        raise DomainError("s and m must be positive")
    r = s * m - 1
    if r < 0:
        return Fraction(0)
    n = r.__floor__()
    total = Fraction(0)
    for j in range(n + 1):
        total += _summand(order, Fraction(j) / s, p, shape)
    frac = r - n
    if frac:
        total += frac * _summand(order, Fraction(n + 1) / s, p, shape)
    return total / s
