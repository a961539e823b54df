from dataclasses import dataclass
from fractions import Fraction

from majorise.utils.exceptions import DomainError, SchemaError
from majorise.utils.rationals import format_ratstr


def _canonical(pairs, descending):
    """Sort (value, length) pairs, drop empty lengths, merge equal values."""
    ordered = sorted(
        ((Fraction(v), Fraction(l)) for v, l in pairs if l != 0),
        key=lambda p: p[0],
        reverse=descending,
    )
    merged = []
    for value, length in ordered:
        if merged and merged[-1][0] == value:
            merged[-1] = (value, merged[-1][1] + length)
        else:
            merged.append((value, length))
    return tuple(merged)


@dataclass(frozen=True)
class StepScale:
    """A decreasing right-continuous step function on [0, 1)."""

    steps: tuple

    def __post_init__(self):
        steps = tuple((Fraction(v), Fraction(l)) for v, l in self.steps)
        object.__setattr__(self, "steps", steps)
        if not steps:
            raise SchemaError(message="a scale needs at least one step")
        if any(length <= 0 for _, length in steps):
            raise SchemaError(message="step lengths must be positive")
        if sum((length for _, length in steps), Fraction(0)) != 1:
            raise SchemaError(message="step lengths must sum to 1")
        for (a, _), (b, _) in zip(steps, steps[1:]):
            if not a > b:
                raise SchemaError(message="step values must be strictly decreasing")

    @classmethod
    def from_pairs(cls, pairs):
        return cls(_canonical(pairs, descending=True))

    def breakpoints(self):
        points = [Fraction(0)]
        for _, length in self.steps:
            points.append(points[-1] + length)
        return points

    def intervals(self):
        """(t1, t2, value) for every step."""
        points = self.breakpoints()
        return [(points[i], points[i + 1], value) for i, (value, _) in enumerate(self.steps)]

    def value_at(self, t):
        t = Fraction(t)
        if not 0 <= t < 1:
            raise DomainError(message=f"scale is defined on [0,1), got {t}")
        for t1, t2, value in self.intervals():
            if t1 <= t < t2:
                return value
        raise DomainError(message=f"no step covers {t}")

    def restrict(self, t1, t2):
        """Pieces (value, length) of the scale restricted to [t1, t2)."""
        pieces = []
        for a, b, value in self.intervals():
            lo, hi = max(a, t1), min(b, t2)
            if lo < hi:
                pieces.append((value, hi - lo))
        return pieces

    def shift(self, constant):
        constant = Fraction(constant)
        return StepScale(tuple((v + constant, l) for v, l in self.steps))

    def negate(self):
        """-λ read in reverse order, which is increasing; returned as IncreasingScale."""
        return IncreasingScale(tuple((-v, l) for v, l in self.steps))

    def serialize(self):
        return {"steps": [{"value": format_ratstr(v), "length": format_ratstr(l)} for v, l in self.steps]}


@dataclass(frozen=True)
class IncreasingScale:
    """An increasing right-continuous step function on [0, 1) (the co-scale)."""

    steps: tuple

    def __post_init__(self):
        steps = tuple((Fraction(v), Fraction(l)) for v, l in self.steps)
        object.__setattr__(self, "steps", steps)
        if not steps or any(length <= 0 for _, length in steps):
            raise SchemaError(message="step lengths must be positive")
        if sum((length for _, length in steps), Fraction(0)) != 1:
            raise SchemaError(message="step lengths must sum to 1")
        for (a, _), (b, _) in zip(steps, steps[1:]):
            if a > b:
                raise SchemaError(message="step values must be non-decreasing")

    @classmethod
    def from_pairs(cls, pairs):
        return cls(_canonical(pairs, descending=False))

    def reversed(self):
        return StepScale.from_pairs(self.steps)

    def serialize(self):
        return {"steps": [{"value": format_ratstr(v), "length": format_ratstr(l)} for v, l in self.steps]}


@dataclass(frozen=True)
class MajorisationReport:
    holds: bool
    breakpoint_slacks: tuple
    total_gap: Fraction

    def serialize(self, exact=True):
        number = format_ratstr if exact else float
        return {
            "holds": self.holds,
            "total_gap": number(self.total_gap),
            "slacks": [{"t": number(t), "slack": number(s)} for t, s in self.breakpoint_slacks],
        }
