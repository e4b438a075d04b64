"""The quartic sign-cascade polynomial and its companion rational function.

For constants alpha < beta and an offset gamma, the three-regime analysis of
the envelope integrals reduces to the rational function

    f(t) = (3t-g)^3 / (t(t-a)(t-b))  -  (9b-2g-3t)^3 / (8b(b-a)(t-b))

whose derivative factors through a quartic phi:

    f'(t) = (3t-g) * phi(t) / (4b(b-a) t^2 (t-a)^2)

phi is built here in both printed coefficient expansions (gamma-form and
epsilon-form, eps = a+b-g), which must agree coefficient by coefficient, and
its twelve closed-form special values at t = g/3, 3a-2g/3, 3b-2g/3 are checked
against direct polynomial evaluation.  Any mismatch raises: the long
coefficient lists are the likeliest transcription hazard, so they are never
trusted silently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import Poly, QRat, qrat, reduce_rational


class IdentityViolation(AssertionError):
    """An exact polynomial identity failed: indicates a transcription bug."""


@dataclass(frozen=True)
class PhiParams:
    """Constants (alpha, beta, gamma); epsilon is always alpha+beta-gamma."""

    alpha: QRat
    beta: QRat
    gamma: QRat

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", qrat(self.alpha))
        object.__setattr__(self, "beta", qrat(self.beta))
        object.__setattr__(self, "gamma", qrat(self.gamma))
        if self.alpha == self.beta:
            raise ValueError("alpha == beta is the degenerate shape, not handled by f")
        if self.alpha == 0 or self.beta == 0:
            raise ValueError("alpha and beta must be nonzero")

    @property
    def epsilon(self) -> QRat:
        return self.alpha + self.beta - self.gamma

    @property
    def special_points(self) -> tuple[QRat, QRat, QRat]:
        a, b, g = self.alpha, self.beta, self.gamma
        return (g / 3, 3 * a - 2 * g / 3, 3 * b - 2 * g / 3)


def _phi_gamma_form(p: PhiParams) -> Poly:
    a, b, g = p.alpha, p.beta, p.gamma
    return Poly.make(
        [
            4 * a * (a - b) * g**2,
            4 * (a - b) * g * (3 * a - 2 * g),
            9 * a * (a + 8 * b) - 12 * (2 * a + b) * g + 4 * g**2,
            -(18 * a + 36 * b - 12 * g),
            9,
        ]
    )


def _phi_epsilon_form(p: PhiParams) -> Poly:
    a, b, e = p.alpha, p.beta, p.epsilon
    return Poly.make(
        [
            4 * a * (a - b) * ((a + b) ** 2 - 2 * (a + b) * e + e**2),
            4 * (b - a) * ((-(a**2) + a * b + 2 * b**2) - (a + 4 * b) * e + 2 * e**2),
            (-11 * a**2 + 44 * a * b - 8 * b**2) + (16 * a + 4 * b) * e + 4 * e**2,
            -6 * (a + 4 * b + 2 * e),
            9,
        ]
    )


def build_phi(p: PhiParams) -> Poly:
    """The degree-4 cascade polynomial; both printed expansions must agree."""
    pg = _phi_gamma_form(p)
    pe = _phi_epsilon_form(p)
    if pg != pe:
        raise IdentityViolation(f"phi expansions disagree for {p}: {pg} vs {pe}")
    return pg


def build_f(p: PhiParams) -> tuple[Poly, Poly]:
    """f as a (num, den) pair over the common denominator 8b(b-a) t(t-a)(t-b)."""
    a, b, g = p.alpha, p.beta, p.gamma
    t = Poly.x()
    cube1 = Poly.make([-g, 3]) ** 3
    cube2 = Poly.make([9 * b - 2 * g, -3]) ** 3
    num = cube1.scale(8 * b * (b - a)) - (t * Poly.make([-a, 1])) * cube2
    den = (t * Poly.make([-a, 1]) * Poly.make([-b, 1])).scale(8 * b * (b - a))
    return num, den


def eval_f(p: PhiParams, x) -> QRat:
    """Exact value of f at x, with removable singularities cancelled."""
    x = qrat(x)
    num, den = reduce_rational(*build_f(p))
    d = den(x)
    if d == 0:
        raise ZeroDivisionError(f"f has a genuine pole at {x} for {p}")
    return num(x) / d


def verify_derivative_identity(p: PhiParams) -> bool:
    """Check (num' den - num den') == 16 b (b-a) (t-b)^2 (3t-g) phi(t) exactly."""
    a, b, g = p.alpha, p.beta, p.gamma
    num, den = build_f(p)
    lhs = num.derivative() * den - num * den.derivative()
    tb2 = Poly.make([-b, 1]) * Poly.make([-b, 1])
    rhs = (tb2 * Poly.make([-g, 3]) * build_phi(p)).scale(16 * b * (b - a))
    return lhs == rhs


def special_values(p: PhiParams) -> dict[tuple[str, str], QRat]:
    """The 12 closed-form values of phi and its derivatives at the three
    special points, each checked against direct polynomial evaluation."""
    a, b, g, e = p.alpha, p.beta, p.gamma, p.epsilon
    closed = {
        ("phi", "g/3"): g**2 * (g - 3 * a) ** 2,
        ("phi", "3a-2g/3"): 36 * a * (a - b) * (2 * a - b + e) ** 2,
        ("phi", "3b-2g/3"): 9 * b * (a - b)
        * ((4 * a**2 - 7 * a * b + 7 * b**2) - 8 * (a - 2 * b) * e + 4 * e**2),
        ("phi'", "g/3"): 2 * g * (g - 3 * a) * (4 * g - 3 * a - 6 * b),
        ("phi'", "3a-2g/3"): 12 * (a - b) * (13 * a - 2 * b + 2 * e) * (2 * a - b + e),
        ("phi'", "3b-2g/3"): 18 * (a - b) * b * (a - 2 * b + 2 * e),
        ("phi''", "g/3"): 44 * g**2 - 12 * (7 * a + 8 * b) * g + 18 * a * (a + 8 * b),
        ("phi''", "3a-2g/3"): 482 * a**2 - 560 * a * b + 128 * b**2
        + (176 * a - 136 * b) * e + 8 * e**2,
        ("phi''", "3b-2g/3"): 50 * a**2 - 236 * a * b + 236 * b**2
        - 40 * (a - 2 * b) * e + 8 * e**2,
        ("phi'''", "g/3"): 36 * (-3 * a - 6 * b + 4 * g),
        ("phi'''", "3a-2g/3"): 36 * (13 * a - 8 * b + 2 * e),
        ("phi'''", "3b-2g/3"): 36 * (-5 * a + 10 * b + 2 * e),
    }
    phi = build_phi(p)
    derivs = {"phi": phi}
    derivs["phi'"] = phi.derivative()
    derivs["phi''"] = derivs["phi'"].derivative()
    derivs["phi'''"] = derivs["phi''"].derivative()
    pts = dict(zip(("g/3", "3a-2g/3", "3b-2g/3"), p.special_points))
    for (name, pt), want in closed.items():
        got = derivs[name](pts[pt])
        if got != want:
            raise IdentityViolation(
                f"special value {name}({pt}) mismatch for {p}: {got} != {want}"
            )
    return closed
