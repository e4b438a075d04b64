"""Numerical bookkeeping along blow-up processes.

For each step of a chain the recursions are driven by the set of older
curves through the center (the host curve, plus the anchor at forced
meeting points):

    r_* - 1   = sum of r_#  over curves # whose proper transform holds the center
    mu_* - m_* = sum of mu_# over the same curves

delta_* = mu_* - r_* measures how bad a place is; delta_* >= 1 means a bad
place.  The capped chain Delta attaches, to each later phase, the defect of
its first curve plus the multiplicity at its anchor; under admissibility and
the working assumption that intermediate defects stay below 1 the capped
chain is nonincreasing (the shifted per-step variant is *not* monotone, which
a regression instance below witnesses).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .descriptors import ChainDescriptor, process
from .exact import QRat, qrat


class BadPlaceEncountered(ValueError):
    """An intermediate defect is already >= 1: the walk stops earlier."""

    def __init__(self, positions: list[str]):
        self.positions = positions
        super().__init__(f"intermediate defect >= 1 at {', '.join(positions)}")


@dataclass(frozen=True)
class MVector:
    """Multiplicities m_* in creation order, each in [0, 3]."""

    desc: ChainDescriptor
    values: tuple[QRat, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(qrat(v) for v in self.values))
        if len(self.values) != self.desc.length:
            raise ValueError("m-vector length does not match the chain")
        if any(v < 0 or v > 3 for v in self.values):
            raise ValueError("multiplicities live in [0, 3]")

    def by_name(self) -> dict[str, QRat]:
        return {s.name: v for s, v in zip(process(self.desc), self.values)}


@dataclass(frozen=True)
class ChainStats:
    r: int
    mu: QRat

    @property
    def delta(self) -> QRat:
        return self.mu - self.r


def ramification_all(desc: ChainDescriptor) -> list[int]:
    """r_* for every step, by the through-curves recursion."""
    steps = process(desc)
    r: list[int] = []
    for s in steps:
        val = 1
        if s.on is not None:
            val += r[s.on]
        if s.meeting is not None:
            val += r[s.meeting]
        r.append(val)
    return r


def ramification(desc: ChainDescriptor) -> int:
    """r of the final place."""
    return ramification_all(desc)[-1]


def mu_all(desc: ChainDescriptor, m: MVector) -> list[QRat]:
    steps = process(desc)
    mu: list[QRat] = []
    for s, mv in zip(steps, m.values):
        val = mv
        if s.on is not None:
            val += mu[s.on]
        if s.meeting is not None:
            val += mu[s.meeting]
        mu.append(val)
    return mu


def mu(desc: ChainDescriptor, m: MVector) -> QRat:
    """mu of the final place."""
    return mu_all(desc, m)[-1]


def mu_coefficients(desc: ChainDescriptor) -> list[int]:
    """Coefficient of each m_i in the final mu: the proximity expansion."""
    steps = process(desc)
    coeffs = [[0] * len(steps) for _ in steps]
    for s in steps:
        coeffs[s.index][s.index] = 1
        for parent in (s.on, s.meeting):
            if parent is not None:
                row = coeffs[parent]
                tgt = coeffs[s.index]
                for i, v in enumerate(row):
                    tgt[i] += v
    return coeffs[-1]


def stats(desc: ChainDescriptor, m: MVector) -> ChainStats:
    return ChainStats(r=ramification(desc), mu=mu(desc, m))


def deltas(desc: ChainDescriptor, m: MVector) -> list[QRat]:
    return [mv - rv for mv, rv in zip(mu_all(desc, m), ramification_all(desc))]


def admissible(desc: ChainDescriptor, m: MVector) -> bool:
    """The multiplicity inequalities: m_1 <= 3 and, for every curve, its
    multiplicity dominates the sum over centers on its proper transform."""
    steps = process(desc)
    vals = m.values
    if vals[0] > 3:
        return False
    loads = [Fraction(0)] * len(steps)
    for s in steps:
        for parent in (s.on, s.meeting):
            if parent is not None:
                loads[parent] += vals[s.index]
    return all(vals[i] >= loads[i] for i in range(len(steps)))


def _phase_starts(desc: ChainDescriptor) -> list[tuple[int, int]]:
    """(first-curve index, anchor index) for every phase past the first,
    across all groups, in process order."""
    steps = process(desc)
    out = []
    for s in steps:
        if s.meeting is not None:
            prev = steps[s.index - 1]
            if prev.meeting != s.meeting:
                # s is the first forced step of a new phase; the phase's first
                # curve is the one s sits on, its anchor is s.meeting
                out.append((s.on, s.meeting))
    return out


def delta_cap_chain(desc: ChainDescriptor, m: MVector) -> list[QRat]:
    """The capped defects Delta, one per phase past the first, process order.

    Preconditions are checked: the m-vector is admissible and every
    intermediate defect is below 1 (otherwise a bad place was found earlier,
    reported via :class:`BadPlaceEncountered`).
    """
    if not admissible(desc, m):
        raise ValueError("m-vector violates the multiplicity inequalities")
    dl = deltas(desc, m)
    steps = process(desc)
    offenders = [steps[i].name for i in range(len(dl) - 1) if dl[i] >= 1]
    if offenders:
        raise BadPlaceEncountered(offenders)
    return [dl[first] + m.values[anchor] for first, anchor in _phase_starts(desc)]


def delta_shifted(desc: ChainDescriptor, m: MVector, index: int) -> QRat:
    """The per-step shifted defect delta_i + m_{i-1} (NOT monotone in general)."""
    if index < 1:
        raise ValueError("shifted defect needs a predecessor")
    return deltas(desc, m)[index] + m.values[index - 1]


# A stored witness that the per-step shifted defect can increase along a
# phase: chain (2.3) with m = (9/5, 11/20, 11/20, 11/20) is admissible, has
# all intermediate defects < 1, yet Delta_(2.3) > Delta_(2.2).
NON_MONOTONE_WITNESS = (
    "(2.3)",
    (Fraction(9, 5), Fraction(11, 20), Fraction(11, 20), Fraction(11, 20)),
)


@dataclass(frozen=True)
class FreeRestartScenario:
    """Branch data for a restart at a free point: continuation depths (p, q)."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 2 or self.q < 2:
            raise ValueError("restart continuation depths are at least 2")


def lemma_3_20_check(delta0, m0, scenario: FreeRestartScenario) -> bool:
    """Verify the free-restart implications on one instance.

    After eliminating the interior multiplicities, the scenario hypotheses
    read

        H1:  1      <= p (delta0 - 1) + (1 + 1/(p-1)) m0
        H2:  1 + 2q <= (q+1) delta0 + (q + 1/(q+1)) m0

    and force

        C1:  delta0 + m0 >= 3/2
        C2:  delta0 + ((q^2+q+1)/(q+1)^2) m0 >= 2 - 1/(q+1)
        C3:  m0 >= q(q+1)/(q^2+q+1) >= 6/7.

    The elimination facts behind each step (p >= 2 shrinks the first
    hypothesis, the C2 coefficient stays below 1, the C3 floor sits at 6/7)
    are re-proved exactly, and the function returns True iff each hypothesis
    that holds for these numbers also delivers its conclusions.
    """
    d0, m0 = qrat(delta0), qrat(m0)
    if d0 >= 1 or m0 >= 1:
        raise ValueError("the scenario assumes delta0 < 1 and m0 < 1")
    p, q = scenario.p, scenario.q
    # exact elimination facts used by the proof
    if not (
        p * (d0 - 1) <= 2 * (d0 - 1)
        and 1 + Fraction(1, p - 1) <= 2
        and Fraction(q * q + q + 1, (q + 1) ** 2) < 1
        and Fraction(q * (q + 1), q * q + q + 1) >= Fraction(6, 7)
    ):
        return False
    h1 = 1 <= p * (d0 - 1) + (1 + Fraction(1, p - 1)) * m0
    h2 = 1 + 2 * q <= (q + 1) * d0 + (q + Fraction(1, q + 1)) * m0
    ok = True
    if h1:
        ok = ok and d0 + m0 >= Fraction(3, 2)
    if h2:
        coeff = Fraction(q * q + q + 1, (q + 1) ** 2)
        ok = ok and d0 + coeff * m0 >= 2 - Fraction(1, q + 1)
        ok = ok and m0 >= Fraction(q * (q + 1), q * q + q + 1)
    return ok


def random_admissible_mvector(
    desc: ChainDescriptor, rng, m1_below_two: bool = True
) -> MVector:
    """Sample an admissible m-vector by consuming parent budgets step by step.

    Each step draws a fraction of the least remaining budget among the curves
    its center sits on, so every inequality holds by construction; fractions
    are drawn high (up to 95%) to exercise the constraint boundary.
    """
    steps = process(desc)
    cap0 = Fraction(199, 100) if m1_below_two else Fraction(3)
    vals: list[Fraction] = []
    avail: list[Fraction] = []
    for s in steps:
        if s.index == 0:
            v = cap0 * Fraction(rng.randint(50, 100), 100)
        else:
            lim = min(avail[p] for p in (s.on, s.meeting) if p is not None)
            v = lim * Fraction(rng.randint(30, 95), 100)
        for p in (s.on, s.meeting):
            if p is not None:
                avail[p] -= v
        vals.append(v)
        avail.append(v)
    return MVector(desc, tuple(vals))
