"""Tests for the threshold certification engine."""

import random
from fractions import Fraction

import pytest

from spancert.bigness import (
    GammaThreshold,
    NotApplicableError,
    THRESHOLD,
    cascade_phi_pattern,
    certify_place,
    minimal_gamma,
    threshold_table,
    theorem0_sigma_check,
)
from spancert.exact import Interval, count_roots, qrat
from spancert.phi import PhiParams, build_phi
from spancert.profiles import EtaProfile, PlaceShape, psi6_closed


def F(a, b=1):
    return Fraction(a, b)


def test_certify_degenerate_gamma2():
    cert = certify_place(PlaceShape.degenerate(), 2)
    assert cert.passed and cert.sup_bound == F(405, 8)


def test_certify_chain15():
    cert = certify_place(PlaceShape.chain(1, 5), 5)
    assert cert.passed
    assert 50 < cert.sup_bound < F(507, 10)
    assert (cert.max_bracket.lo, cert.max_bracket.hi) == (qrat("1.922"), qrat("1.923"))


def test_certify_chain14_and_13():
    cert = certify_place(PlaceShape.chain(1, 4), qrat("4.23"))
    assert cert.passed and 50 < cert.sup_bound < 51
    assert (cert.max_bracket.lo, cert.max_bracket.hi) == (qrat("1.581"), qrat("1.582"))
    cert = certify_place(PlaceShape.chain(1, 3), qrat("3.51"))
    assert cert.passed and 50 < cert.sup_bound < 51
    assert (cert.max_bracket.lo, cert.max_bracket.hi) == (qrat("1.253"), qrat("1.254"))


def test_certify_non_exceptional():
    cert = certify_place(PlaceShape.non_exceptional(), 1)
    assert cert.passed and cert.sup_bound < 41


def test_certificate_bounds_dominate_samples():
    rng = random.Random(5)
    for shape, g in [
        (PlaceShape.chain(1, 5), F(5)),
        (PlaceShape.chain(2, 5), qrat("6.31")),
        (PlaceShape.degenerate(), F(2)),
    ]:
        cert = certify_place(shape, g)
        for reg in cert.regimes:
            hi = reg.hi if reg.hi is not None else reg.lo + 30
            if hi <= reg.lo:
                continue
            for _ in range(20):
                lam = reg.lo + (hi - reg.lo) * F(rng.randint(0, 1000), 1000)
                assert psi6_closed(EtaProfile(lam, g), shape) <= cert.sup_bound


def test_cascade_consistent_with_sturm():
    # when the cascade reports a unique interior max, phi changes sign once
    for a, b, g in [(1, 5, F(5)), (1, 4, qrat("4.23")), (2, 5, qrat("6.31"))]:
        p = PhiParams(a, b, g)
        lo = max(g / 3, 3 * a - 2 * g / 3)
        hi = 3 * b - 2 * g / 3
        pat, _ = cascade_phi_pattern(p, lo, hi)
        assert pat == "pos_to_neg"
        assert count_roots(build_phi(p), lo, hi) == 1
    # decreasing families report all-negative and phi indeed has no roots
    p = PhiParams(1, 2, qrat("2.816"))
    lo, hi = 3 - 2 * qrat("2.816") / 3, 6 - 2 * qrat("2.816") / 3
    pat, _ = cascade_phi_pattern(p, lo, hi)
    assert pat == "all_negative"
    assert count_roots(build_phi(p), lo, hi) == 0


def test_minimal_gamma_values():
    th = minimal_gamma(PlaceShape.degenerate())
    assert th.squared == F(107, 27)
    fine = th.grid_above(F(1, 1000000))
    assert (fine - F(1, 1000000), fine) == (qrat("1.990719"), qrat("1.990720"))
    th = minimal_gamma(PlaceShape.chain(1, 2))
    assert th.squared == F(642, 81) == F(214, 27)
    fine = th.grid_above(F(1, 100000))
    assert (fine - F(1, 100000), fine) == (qrat("2.81530"), qrat("2.81531"))
    th = minimal_gamma(PlaceShape.chain(2, 3))
    assert th.squared == F(107 * 6, 27)


def test_minimal_gamma_not_applicable():
    with pytest.raises(NotApplicableError):
        minimal_gamma(PlaceShape.chain(1, 5))
    with pytest.raises(NotApplicableError):
        minimal_gamma(PlaceShape.non_exceptional())


def test_minimal_gamma_consistency():
    # just above gamma*: certifies; a tenth below: the minimal-slope value
    # already reaches the threshold, so the certificate fails there
    for shape in [PlaceShape.degenerate(), PlaceShape.chain(2, 3), PlaceShape.chain(3, 5)]:
        th = minimal_gamma(shape)
        above = th.grid_above(F(1, 1000))
        assert certify_place(shape, above).passed
        below = above - F(1, 10)
        cert = certify_place(shape, below)
        assert not cert.passed
        assert cert.regimes[0].bound >= THRESHOLD


def test_threshold_table_all_pass():
    entries = threshold_table()
    assert len(entries) == 101
    assert all(e.certificate.passed for e in entries)
    by_id = {e.entry_id: e for e in entries}
    b1 = by_id["3.19;1"].certificate.max_bracket
    assert (b1.lo, b1.hi) == (qrat("2.161"), qrat("2.162"))
    b2 = by_id["3.19;2"].certificate.max_bracket
    assert (b2.lo, b2.hi) == (qrat("3.069"), qrat("3.07"))
    # tightness of the (1,n) family certificates
    for eid in ("3.10;3", "3.10;4", "3.10;5"):
        assert 50 < by_id[eid].certificate.sup_bound < 51


def test_sigma_check():
    assert theorem0_sigma_check(3, 7, F(9, 2)).passed
    res = theorem0_sigma_check(3, 7, 3)
    assert not res.passed and res.reason == "Sigma3TooSmall"
    assert not theorem0_sigma_check(2, 7, F(9, 2)).passed
