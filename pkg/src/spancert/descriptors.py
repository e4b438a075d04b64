"""Blow-up chain descriptors and the process structure they encode.

A descriptor is a primary parenthesized group plus optional bracketed restart
groups, e.g. ``(3)``, ``(3.2)``, ``(2.2.2)``, ``(2.2)[2.3]``.  Within a group
``(s1.s2.....st)``: phase 1 performs s1 blow-ups in a free chain (each center
on the newest exceptional curve, off all older ones); phase p >= 2 performs
s_p - 1 blow-ups, each at the meeting point of the newest curve with the
anchor curve, the (s_{p-1}-1)-th curve of the previous phase.  A bracketed
group restarts with a free point on the newest curve; its first phase runs
from index 2, so ``[r]`` contributes r-1 blow-ups.

Dots and commas both separate indices.  A primary group consisting entirely
of 1s collapses to a free chain of that length, so ``(1,1)`` means ``(2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional


class ChainSyntaxError(ValueError):
    """The descriptor string does not follow the chain grammar."""


@dataclass(frozen=True)
class ChainDescriptor:
    groups: tuple[tuple[int, ...], ...]  # first primary, rest bracketed restarts

    def __post_init__(self) -> None:
        if not self.groups:
            raise ChainSyntaxError("empty descriptor")
        for gi, seg in enumerate(self.groups):
            if not seg:
                raise ChainSyntaxError("empty group")
            head_min = 1 if gi == 0 else 2
            if seg[0] < head_min:
                raise ChainSyntaxError(f"group head {seg[0]} below {head_min}")
            if len(seg) > 1 and seg[0] < 2:
                raise ChainSyntaxError("nested group needs a head run of length >= 2")
            if any(s < 2 for s in seg[1:]):
                raise ChainSyntaxError("indices past the head must be >= 2")

    @staticmethod
    def parse(text: str) -> "ChainDescriptor":
        text = text.strip().replace(" ", "")
        if not text:
            raise ChainSyntaxError("empty descriptor")
        groups: list[tuple[int, ...]] = []
        for m in re.finditer(r"(\(|\[)([0-9.,]+)(\)|\])", text):
            opener, body, closer = m.group(1), m.group(2), m.group(3)
            if (opener, closer) not in {("(", ")"), ("[", "]")}:
                raise ChainSyntaxError(f"mismatched brackets in {text!r}")
            if opener == "(" and groups:
                raise ChainSyntaxError("only the first group may use parentheses")
            if opener == "[" and not groups:
                raise ChainSyntaxError("descriptor must start with a (...) group")
            try:
                seg = tuple(int(tok) for tok in re.split(r"[.,]", body))
            except ValueError as exc:
                raise ChainSyntaxError(f"bad indices in {body!r}") from exc
            groups.append(seg)
        joined = "".join(
            ("(" if i == 0 else "[") + ".".join(map(str, g)) + (")" if i == 0 else "]")
            for i, g in enumerate(groups)
        )
        if joined != text.replace(",", "."):
            raise ChainSyntaxError(f"cannot parse {text!r}")
        # a primary group of all 1s is a free chain written pointwise
        if groups and len(groups[0]) > 1 and all(s == 1 for s in groups[0]):
            groups[0] = (len(groups[0]),)
        return ChainDescriptor(tuple(groups))

    @property
    def length(self) -> int:
        """Total number of blow-ups."""
        total = 0
        for gi, seg in enumerate(self.groups):
            total += seg[0] - (0 if gi == 0 else 1)
            total += sum(s - 1 for s in seg[1:])
        return total

    def __str__(self) -> str:
        parts = []
        for i, g in enumerate(self.groups):
            body = ".".join(map(str, g))
            parts.append(f"({body})" if i == 0 else f"[{body}]")
        return "".join(parts)


@dataclass(frozen=True)
class BlowupStep:
    """One blow-up: where its center sits relative to the older curves."""

    index: int
    name: str
    on: Optional[int]       # index of the host curve (always the newest); None for the first
    meeting: Optional[int]  # index of the anchor curve when the center is forced


def process(desc: ChainDescriptor) -> list[BlowupStep]:
    """Expand a descriptor into its blow-up steps in creation order."""
    steps: list[BlowupStep] = []

    def canonical_name(gi: int, seg: tuple[int, ...], p: int, n: int) -> str:
        # the last curve of a non-final phase is renamed as the next phase's first
        if p < len(seg) and n == seg[p - 1]:
            path = list(seg[:p]) + [1]
        else:
            path = list(seg[: p - 1]) + [n]
        body = ".".join(map(str, path))
        return f"({body})" if gi == 0 else f"[{body}]"

    for gi, seg in enumerate(desc.groups):
        curve_at: dict[tuple[int, int], int] = {}
        if gi > 0:
            if not steps:
                raise ChainSyntaxError("bracket group cannot start the process")
            curve_at[(1, 1)] = steps[-1].index  # the pre-existing newest curve
        phase1_from = 1 if gi == 0 else 2
        for p, size in enumerate(seg, start=1):
            first_n = phase1_from if p == 1 else 2
            for n in range(first_n, size + 1):
                if p == 1:
                    host = None if (gi == 0 and n == 1) else curve_at[(1, n - 1)]
                    meet = None
                else:
                    host = curve_at[(p, n - 1)]
                    meet = curve_at[(p - 1, seg[p - 2] - 1)]
                idx = len(steps)
                steps.append(BlowupStep(idx, canonical_name(gi, seg, p, n), host, meet))
                curve_at[(p, n)] = idx
                if p < len(seg) and n == size:
                    curve_at[(p + 1, 1)] = idx
    return steps


def step_names(desc: ChainDescriptor) -> list[str]:
    return [s.name for s in process(desc)]


def centers_on(desc: ChainDescriptor) -> dict[int, list[int]]:
    """For each curve index, the steps whose center lies on its proper transform."""
    steps = process(desc)
    out: dict[int, list[int]] = {s.index: [] for s in steps}
    for s in steps:
        if s.on is not None:
            out[s.on].append(s.index)
        if s.meeting is not None:
            out[s.meeting].append(s.index)
    return out
