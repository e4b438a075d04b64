"""Tests for the exact arithmetic substrate."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spancert.exact import (
    AmbiguousRootError,
    Interval,
    NoRootError,
    PiecewisePoly,
    PoleInIntervalError,
    Poly,
    count_roots,
    grid_bracket,
    integrate_piecewise,
    interval,
    interval_eval,
    isolate_all_roots,
    isolate_root,
    poly_derive,
    poly_eval,
    poly_gcd,
    poly_nonneg_on,
    poly_nonpos_on,
    qrat,
    qrat_str,
    sign_on_interval,
    squarefree_part,
    sup_on_closed_interval,
    sup_rational_bound,
    POS_INF,
)

# h(lambda) = 9l^3 - 24l^2 - 8l + 8 from the degree-3 sign-change analysis
H = Poly.make([8, -8, -24, 9])


rationals = st.fractions(
    min_value=Fraction(-10), max_value=Fraction(10), max_denominator=50
)


def test_qrat_parses_decimals_exactly():
    assert qrat("4.23") == Fraction(423, 100)
    assert qrat("0.464") == Fraction(464, 1000)
    assert qrat("3.51") == Fraction(351, 100)
    assert qrat("-0.5") == Fraction(-1, 2)


@given(rationals)
def test_qrat_round_trip(q):
    assert qrat(qrat_str(q)) == q


def test_poly_eval_examples():
    assert poly_eval(H, Fraction(1, 3)) == 3
    assert poly_eval(H, Fraction(7, 3)) == -27
    assert poly_eval(Poly.make([]), 5) == 0


def test_poly_derive_examples():
    assert poly_derive(H) == Poly.make([-8, -48, 27])
    assert poly_derive(Poly.make([-8, -48, 27])) == Poly.make([-48, 54])
    assert poly_derive(Poly.const(7)).is_zero


@given(st.lists(rationals, max_size=7), rationals, rationals)
@settings(max_examples=200)
def test_integrate_derive_round_trip(coeffs, a, b):
    p = Poly.make(coeffs)
    lo, hi = min(a, b), max(a, b)
    if lo == hi:
        hi = lo + 1
    f = PiecewisePoly.make([lo, hi], [p.derivative()])
    assert f.integrate(lo, hi) == p(hi) - p(lo)


def test_integrate_piecewise_examples():
    f = PiecewisePoly.make([0, qrat("4.5")], [Poly.make([0, 0, 3])])
    assert integrate_piecewise(f, 0, qrat("4.5")) == Fraction(729, 8)
    assert integrate_piecewise(f, 0, 0) == 0
    # {3x^2 on [0,1]; 3(x-1)^2 + 3 on [1,2]} over [0,2] -> 1 + (1+3) = 5
    g = PiecewisePoly.make(
        [0, 1, 2], [Poly.make([0, 0, 3]), Poly.make([6, -6, 3])]
    )
    assert integrate_piecewise(g, 0, 2) == 5


def test_integrate_additivity():
    g = PiecewisePoly.make([0, 1, 2], [Poly.make([0, 0, 3]), Poly.make([6, -6, 3])])
    mid = qrat("0.75")
    assert g.integrate(0, 2) == g.integrate(0, mid) + g.integrate(mid, 2)


def test_integrate_domain_violation():
    f = PiecewisePoly.make([0, 1], [Poly.const(1)])
    with pytest.raises(Exception):
        f.integrate(0, 2)


def test_isolate_root_stated_bracket():
    br = isolate_root(H, interval(Fraction(1, 3), Fraction(8, 9)), Fraction(1, 1000))
    assert br.width <= Fraction(1, 1000)
    assert H.sign_at(br.lo) * H.sign_at(br.hi) < 0
    aligned = grid_bracket(H, br)
    assert (aligned.lo, aligned.hi) == (qrat("0.464"), qrat("0.465"))


def test_isolate_root_linear():
    p = Poly.make([-2, 1])
    br = isolate_root(p, interval(0, 3), Fraction(1, 1000))
    assert br.contains(Fraction(2))
    assert br.width <= Fraction(1, 1000)


def test_isolate_root_errors():
    with pytest.raises(NoRootError):
        isolate_root(Poly.make([1, 0, 1]), interval(-5, 5), Fraction(1, 100))
    # two roots, signs equal at the ends
    p = Poly.make([2, -3, 1])  # (x-1)(x-2)
    with pytest.raises(AmbiguousRootError):
        isolate_root(p, interval(0, 3), Fraction(1, 100))


def test_isolate_root_nested_refinement():
    br1 = isolate_root(H, interval(Fraction(1, 3), Fraction(8, 9)), Fraction(1, 1000))
    br2 = isolate_root(H, interval(Fraction(1, 3), Fraction(8, 9)), Fraction(1, 10000))
    assert br1.lo <= br2.lo and br2.hi <= br1.hi


def test_sign_on_interval():
    assert sign_on_interval(Poly.make([1, 0, 1]), interval(-5, 5)).all_positive
    rep = sign_on_interval(H, interval(Fraction(1, 3), Fraction(7, 3)))
    assert rep.changes_once
    assert qrat("0.464") <= rep.bracket.lo and rep.bracket.hi <= qrat("0.465")
    assert sign_on_interval(Poly.make([-1, 0, -1]), interval(0, 1)).all_negative
    # double root inside -> mixed (touches zero, no clean classification)
    assert sign_on_interval(Poly.make([1, -2, 1]), interval(0, 2)).kind == "mixed"


def test_count_roots_infinite_end():
    p = Poly.make([2, -3, 1])  # roots 1, 2
    assert count_roots(p, 0, POS_INF) == 2
    assert count_roots(p, Fraction(3, 2), POS_INF) == 1
    assert count_roots(p, 2, POS_INF) == 0  # half-open: (2, inf]


def test_squarefree_and_gcd():
    p = Poly.make([1, -2, 1])  # (x-1)^2
    assert squarefree_part(p) == Poly.make([-1, 1])
    a = Poly.make([-1, 0, 1])  # (x-1)(x+1)
    b = Poly.make([-1, 1])
    assert poly_gcd(a, b) == Poly.make([-1, 1])


def test_isolate_all_roots():
    p = Poly.make([2, -3, 1])  # roots 1, 2
    brs = isolate_all_roots(p, interval(0, 5), Fraction(1, 100))
    assert len(brs) == 2
    assert brs[0].contains(Fraction(1)) and brs[1].contains(Fraction(2))


def test_poly_nonneg_on():
    assert poly_nonneg_on(Poly.make([0, 0, 1]), 0)          # x^2 on [0, inf)
    assert poly_nonneg_on(Poly.make([1, -2, 1]), -10)       # (x-1)^2
    assert not poly_nonneg_on(Poly.make([-1, 0, 1]), 0)     # x^2-1 dips below 0
    assert poly_nonneg_on(Poly.make([-1, 0, 1]), 1)         # ... but not past 1
    assert poly_nonpos_on(Poly.make([2, -1]), 2)            # 2 - x for x >= 2
    assert not poly_nonpos_on(Poly.make([2, -1]), 0)


def test_sup_rational_bound_constant():
    assert sup_rational_bound(Poly.const(7), Poly.const(1), interval(0, 10)) == 7


def test_sup_rational_bound_is_upper_bound():
    rng = random.Random(7)
    num = Poly.make([3, -1, 2])
    den = Poly.make([5, 0, 1])  # no real roots
    iv = interval(-2, 2)
    bound = sup_rational_bound(num, den, iv, budget=48)
    for _ in range(100):
        x = Fraction(rng.randint(-2000, 2000), 1000)
        assert num(x) / den(x) <= bound


def test_sup_rational_bound_pole():
    with pytest.raises(PoleInIntervalError):
        sup_rational_bound(Poly.const(1), Poly.make([0, 1]), interval(-1, 1))


def test_sup_on_closed_interval_cancels_removable_singularity():
    # (x^2-1)/(x-1) = x+1 on [0,2]: sup = 3 despite den root at 1
    num = Poly.make([-1, 0, 1])
    den = Poly.make([-1, 1])
    assert sup_on_closed_interval(num, den, interval(0, 2)) == 3


def test_sup_on_closed_interval_interior_max():
    # f = x(2-x): max 1 at x=1
    bound = sup_on_closed_interval(Poly.make([0, 2, -1]), Poly.const(1), interval(0, 2))
    assert 1 <= bound <= qrat("1.001")


def test_interval_eval_encloses():
    p = Poly.make([1, -3, 2])
    iv = interval(0, 2)
    enc = interval_eval(p, iv)
    for x in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)):
        assert enc.lo <= p(x) <= enc.hi
