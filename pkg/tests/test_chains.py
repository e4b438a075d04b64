"""Tests for the blow-up process numerics."""

import random
from fractions import Fraction
from itertools import product

import pytest

from spancert.chains import (
    BadPlaceEncountered,
    FreeRestartScenario,
    MVector,
    NON_MONOTONE_WITNESS,
    admissible,
    delta_cap_chain,
    delta_shifted,
    deltas,
    lemma_3_20_check,
    mu,
    mu_all,
    mu_coefficients,
    ramification,
    ramification_all,
    random_admissible_mvector,
)
from spancert.descriptors import ChainDescriptor, process
from spancert.surfaces import DivisorClass, weighted_w

D = ChainDescriptor.parse
F = Fraction


def test_ramification_closed_forms():
    assert ramification(D("(3)")) == 3
    assert ramification(D("(3.2)")) == 6
    assert ramification(D("(3.2.2)")) == 2 * 3 * 2 - 1 * 2
    assert ramification(D("(2.3.2.2)")) == 18


def test_ramification_matches_expansions():
    # closed forms of the recursion for all families with small indices
    for i, j in product(range(2, 6), range(2, 6)):
        assert ramification(D(f"({i}.{j})")) == i * j
    for i, j, k in product(range(2, 6), range(2, 6), range(2, 6)):
        assert ramification(D(f"({i}.{j}.{k})")) == k * i * j - (k - 1) * (i - 1)
    for i, j, k, n in product(range(2, 5), range(2, 5), range(2, 5), range(2, 5)):
        want = (
            i * j * k * n - i * j * n - i * k * n + i * j + n * k + 2 * n * i - n - i
        )
        assert ramification(D(f"({i}.{j}.{k}.{n})")) == want
    for j, l in product(range(2, 6), range(2, 6)):
        assert ramification(D(f"(2.{j}.2.{l})")) == 2 * j * l + 2 * j + l - 2


def test_mu_closed_forms():
    d = D("(3.2)")
    m = MVector(d, (1, 1, 1, 1))
    assert mu(d, m) == 6
    d = D("(1)")
    assert mu(d, MVector(d, (3,))) == 3
    d = D("(2.2.2)")
    assert mu(d, MVector(d, (F(1, 2),) * 4)) == F(7, 2)
    assert mu_coefficients(d) == [3, 2, 1, 1]


def test_mu_expansion_matches_recursion():
    # expanded linear forms re-derived from the recursion, all depths <= 4
    rng = random.Random(9)
    for i, j, k, n in product(range(2, 5), range(2, 5), range(2, 4), range(2, 4)):
        d = D(f"({i}.{j}.{k}.{n})")
        coeffs = mu_coefficients(d)
        names = [s.name for s in process(d)]
        # block structure: head, phase-2, phase-3, phase-4 coefficient values
        head = (j - 1) + n * ((j - 1) * (k - 1) + 1)
        blocks = [head] * (i - 1) + [n * (k - 1) + 1] * (j - 1) + [n] * (k - 1) + [1] * n
        assert coeffs == blocks, (d, names)
        vals = tuple(F(rng.randint(0, 12), 4) / 4 for _ in range(d.length))
        m = MVector(d, vals)
        assert mu(d, m) == sum(c * v for c, v in zip(blocks, vals))


def test_mu_coefficients_match_lattice_weights():
    # the same linear form shows up as the lemma weight of the final place
    for text in ["(4)", "(3.2)", "(2.3)", "(2.2.2)", "(2.3.2)", "(2.3.2.2)", "(2.2.2.2)"]:
        d = D(text)
        coeffs = mu_coefficients(d)
        unitweights = []
        for i in range(d.length):
            w = [0] * d.length
            w[i] = 1
            got, _, _ = weighted_w(d, DivisorClass(5, tuple(w)))
            unitweights.append(got)
        assert coeffs == unitweights, text


def test_admissible_examples():
    assert admissible(D("(3)"), MVector(D("(3)"), (3, 2, 1)))
    assert not admissible(D("(3)"), MVector(D("(3)"), (1, 2, 1)))
    d = D("(3.2)")
    assert admissible(d, MVector(d, (2, F(3, 2), 1, F(1, 4))))


def test_delta_cap_chain_monotone_on_random_admissible():
    rng = random.Random(20240823)
    descs = [D("(3.2)"), D("(2.2.2)"), D("(3.2.2)"), D("(2.3.2.2)"), D("(2.2)[2.3]")]
    checked = 0
    while checked < 500:
        d = descs[rng.randrange(len(descs))]
        m = random_admissible_mvector(d, rng)
        assert admissible(d, m)
        try:
            cc = delta_cap_chain(d, m)
        except BadPlaceEncountered:
            continue
        assert all(a >= b for a, b in zip(cc, cc[1:])), (str(d), m.values)
        checked += 1


def test_delta_cap_chain_structure():
    d = D("(3.2)")
    m = MVector(d, (F(19, 10), F(19, 20), F(1, 2), F(1, 4)))
    cc = delta_cap_chain(d, m)
    # one capped value: delta at (3.2)'s first curve plus m at the anchor (2)
    names = [s.name for s in process(d)]
    dl = deltas(d, m)
    assert cc == [dl[2] + m.values[1]]
    assert names[2] == "(3.1)"
    # single-segment chains have no capped chain at all
    assert delta_cap_chain(D("(3)"), MVector(D("(3)"), (F(3, 2), 1, F(1, 2)))) == []


def test_delta_cap_chain_reports_bad_place():
    d = D("(2.2)")
    m = MVector(d, (F(299, 100), F(149, 100), F(1, 100)))
    with pytest.raises(BadPlaceEncountered) as exc:
        delta_cap_chain(d, m)
    assert "(1)" in exc.value.positions


def test_shifted_defect_non_monotone_witness():
    text, values = NON_MONOTONE_WITNESS
    d = D(text)
    m = MVector(d, values)
    assert admissible(d, m)
    dl = deltas(d, m)
    assert all(x < 1 for x in dl[:-1]) and dl[-1] >= 1
    assert delta_shifted(d, m, 3) > delta_shifted(d, m, 2)


def test_lemma_3_20():
    assert lemma_3_20_check(F(3, 4), F(7, 8), FreeRestartScenario(2, 2))
    # the q = 2 floor is exactly 6/7 and grows with q
    assert F(2 * 3, 7) == F(6, 7)
    for q in range(2, 30):
        coeff = F(q * q + q + 1, (q + 1) ** 2)
        assert coeff < 1
        assert F(q * (q + 1), q * q + q + 1) >= F(6, 7)
    with pytest.raises(ValueError):
        lemma_3_20_check(F(3, 2), F(1, 2), FreeRestartScenario(2, 2))
    with pytest.raises(ValueError):
        FreeRestartScenario(1, 2)
