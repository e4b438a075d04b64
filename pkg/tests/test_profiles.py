"""Tests for envelope profiles, regime forms and finite sums."""

import random
from fractions import Fraction

import pytest

from spancert.exact import DomainError, qrat
from spancert.profiles import (
    EtaProfile,
    PlaceShape,
    d_sum,
    eta_eval,
    psi6_at_minimal_slope,
    psi6_by_integration,
    psi6_closed,
    regime_boundaries,
)


def F(a, b=1):
    return Fraction(a, b)


def test_eta_eval_examples():
    assert eta_eval(EtaProfile(F(1, 3), 1), 0) == 0
    assert eta_eval(EtaProfile(F(2, 3), 2), 3) == 2
    assert eta_eval(EtaProfile(1, 3), F(9, 2)) == F(9, 2)


def test_eta_profile_invariants():
    with pytest.raises(DomainError):
        EtaProfile(F(1, 2), 2)  # slope below gamma/3
    with pytest.raises(DomainError):
        EtaProfile(1, 0)


def test_eta_envelope_monotone_in_slope():
    rng = random.Random(3)
    for _ in range(50):
        g = F(rng.randint(1, 9), 3)
        l1 = g / 3 + F(rng.randint(0, 20), 10)
        l2 = l1 + F(rng.randint(1, 20), 10)
        p1, p2 = EtaProfile(l1, g), EtaProfile(l2, g)
        for k in range(0, 19):
            x = F(k, 2)
            if x >= 3:
                assert eta_eval(p1, x) <= eta_eval(p2, x)
            assert eta_eval(p1, x) >= 0


def test_regime_boundaries_examples():
    rb = regime_boundaries(EtaProfile(F(7, 3), 1), PlaceShape.non_exceptional())
    assert rb.t_alpha == F(9, 2)
    rb = regime_boundaries(EtaProfile(1, 3), PlaceShape.chain(1, 2))
    assert rb.x0 == 0
    rb = regime_boundaries(EtaProfile(2, 5), PlaceShape.chain(1, 5))
    assert (rb.x0, rb.t_alpha, rb.t_beta) == (F(1, 2), 1, None)


def test_regime_boundaries_ordering():
    rng = random.Random(4)
    for _ in range(50):
        a = F(rng.randint(1, 5))
        b = a + rng.randint(1, 5)
        g = F(rng.randint(1, 3 * int(a)), 2)
        lam = b + F(rng.randint(1, 40), 7)  # past beta: all three exist
        rb = regime_boundaries(EtaProfile(lam, g), PlaceShape.chain(a, b))
        assert rb.x0 < rb.t_alpha < rb.t_beta


def test_psi6_closed_stated_values():
    # warm-up place, gamma 2: regime-1 value at lam = 2/3 and regime-3 at 5/3
    deg = PlaceShape.degenerate()
    assert psi6_closed(EtaProfile(F(2, 3), 2), deg) == F(405, 8)
    assert psi6_closed(EtaProfile(F(5, 3), 2), deg) == F(729, 20)
    # non-exceptional upper form at 7/3
    ne = PlaceShape.non_exceptional()
    assert psi6_closed(EtaProfile(F(7, 3), 1), ne) == F(1458, 49)
    # chain(1,2) at the left end lam = 1, gamma = 3 (regime-1 boundary point)
    assert psi6_closed(EtaProfile(1, 3), PlaceShape.chain(1, 2)) == F(729, 16)


def test_psi6_integration_matches_closed_on_stated_points():
    cases = [
        (EtaProfile(F(2, 3), 2), PlaceShape.degenerate()),
        (EtaProfile(F(5, 3), 2), PlaceShape.degenerate()),
        (EtaProfile(F(7, 3), 1), PlaceShape.non_exceptional()),
        (EtaProfile(F(1, 2), 1), PlaceShape.non_exceptional()),
        (EtaProfile(1, 3), PlaceShape.chain(1, 2)),
        (EtaProfile(F(5, 3), 5), PlaceShape.chain(1, 5)),
        (EtaProfile(2, 5), PlaceShape.chain(1, 5)),  # removable pole checks
        (EtaProfile(12, 5), PlaceShape.chain(1, 5)),  # upper regime
        (EtaProfile(2, F(57, 10)), PlaceShape.chain(2, 3)),  # lower regime
        (EtaProfile(5, F(63, 10)), PlaceShape.chain(2, 5)),
    ]
    for prof, shape in cases:
        assert psi6_by_integration(prof, shape) == psi6_closed(prof, shape)


def test_psi6_integration_matches_closed_random():
    rng = random.Random(11)
    shapes = [
        PlaceShape.non_exceptional(),
        PlaceShape.degenerate(),
        PlaceShape.chain(1, 2),
        PlaceShape.chain(1, 5),
        PlaceShape.chain(2, 5),
        PlaceShape.chain(3, 7),
        PlaceShape.chain(5, 8),
    ]
    count = 0
    while count < 50:
        shape = shapes[rng.randrange(len(shapes))]
        g = F(rng.randint(1, 60), 10)
        lam = g / 3 + F(rng.randint(0, 200), 10)
        prof = EtaProfile(lam, g)
        try:
            want = psi6_closed(prof, shape)
        except DomainError:
            continue  # upper regime needs lam past the shape slope
        assert psi6_by_integration(prof, shape) == want
        count += 1


def test_psi6_regime_continuity():
    # at each regime boundary the adjacent closed forms agree exactly
    from spancert.phi import PhiParams, eval_f

    for a, b, g in [(1, 5, F(5)), (2, 5, F(631, 100)), (2, 3, F(57, 10)), (3, 7, F(913, 100))]:
        shape = PlaceShape.chain(a, b)
        c, d = 3 * a - 2 * g / 3, 3 * b - 2 * g / 3
        if c >= g / 3:
            regime1 = F(729, 8) - (F(3, 2) * c + g) ** 3 / (a * b * c)
            assert regime1 == eval_f(PhiParams(a, b, g), c)
        regime3 = (3 * d - g) ** 3 / (d * (d - a) * (d - b))
        assert eval_f(PhiParams(a, b, g), d) == regime3


def test_psi6_at_minimal_slope():
    assert psi6_at_minimal_slope(PlaceShape.degenerate(), 2) == F(81, 8) * 5
    sh = PlaceShape.chain(4, 9)
    # value at lam = gamma/3 = 4 equals 405/8 when gamma = 12
    assert psi6_at_minimal_slope(sh, 12) == F(405, 8)
    assert psi6_closed(EtaProfile(4, 12), sh) == F(405, 8)


def test_d_sum_order1_is_m():
    prof = EtaProfile(F(2, 3), 2)
    for s, m in [(3, F(9, 2)), (7, F(9, 2)), (F(5, 2), F(7, 3))]:
        assert d_sum(1, s, m, prof, PlaceShape.degenerate()) == m


def test_d_sum_single_term():
    prof = EtaProfile(F(1, 3), 1)
    assert d_sum(3, 1, 1, prof, PlaceShape.non_exceptional()) == 0


def test_d_sum_converges_to_limit():
    prof = EtaProfile(F(2, 3), 2)
    shape = PlaceShape.degenerate()
    limit = psi6_closed(prof, shape) / 6  # 405/48
    assert limit == F(405, 48)
    for s in (10, 20, 50, 100, 200):
        err = abs(d_sum(3, s, F(9, 2), prof, shape) - limit)
        assert err <= F(10, s)
