import logging
from fractions import Fraction

from majorise.models.scale import MajorisationReport, StepScale
from majorise.schemas.scale_schema import StepScaleSchema
from majorise.services.measure_service import load_document, parse_function
from majorise.utils.exceptions import DomainError

logger = logging.getLogger(__name__)


def rearrange(f):
    """λ(f): the decreasing rearrangement of a simple function."""
    return StepScale.from_pairs((c.value, c.mass) for c in f.cells())


def distribution(f, s):
    """d(s; f) = ν{f > s}."""
    s = Fraction(s)
    return sum((c.mass for c in f.cells() if c.value > s), Fraction(0))


def co_scale(f):
    return rearrange(-f).negate()


def singular_scale(f):
    return rearrange(f.absolute())


def cumulative(scale, s):
    """Φ(s) = ∫_0^s λ(t) dt for a step scale."""
    s = Fraction(s)
    if not 0 <= s <= 1:
        raise DomainError(message=f"cumulative is defined on [0,1], got {s}")
    total = Fraction(0)
    for t1, t2, value in scale.intervals():
        if s <= t1:
            break
        total += value * (min(s, t2) - t1)
    return total


def add_scales(a, b):
    points = sorted(set(a.breakpoints()) | set(b.breakpoints()))
    pairs = [(a.value_at(lo) + b.value_at(lo), hi - lo) for lo, hi in zip(points, points[1:])]
    return StepScale.from_pairs(pairs)


def union_breakpoints(*scales):
    points = set()
    for scale in scales:
        points.update(scale.breakpoints())
    return sorted(points)


def majorise_check(x, y, tol=0):
    """Report on x ≺ y for two step scales.

    Both cumulative integrals are piecewise linear with kinks only at the
    breakpoints, so comparing them on the union of breakpoints is exact.
    """
    tol = Fraction(tol)
    slacks = []
    for t in union_breakpoints(x, y):
        if t == 0:
            continue
        slacks.append((t, cumulative(y, t) - cumulative(x, t)))
    total_gap = cumulative(y, 1) - cumulative(x, 1)
    holds = all(s >= -tol for _, s in slacks) and abs(total_gap) <= tol
    logger.debug("majorisation %s over %d breakpoints", "holds" if holds else "fails", len(slacks))
    return MajorisationReport(holds=holds, breakpoint_slacks=tuple(slacks), total_gap=total_gap)


def submajorise_check(x, y):
    """x ≺≺ y on singular value functions; no equality at 1 is required."""
    mu_x, mu_y = singular_scale(x), singular_scale(y)
    return all(cumulative(mu_x, t) <= cumulative(mu_y, t) for t in union_breakpoints(mu_x, mu_y))


def cut(f, t):
    """f on its top level sets of total mass t, zero elsewhere; ∫cut(f, t) = Φ_f(t).

    t must be a breakpoint of rearrange(f), so the cut is a union of whole
    level sets.
    """
    t = Fraction(t)
    scale = rearrange(f)
    if t not in scale.breakpoints():
        raise DomainError(message=f"{t} is not a level-set boundary of the scale")
    kept = {value for t1, _, value in scale.intervals() if t1 < t}
    return f.map(lambda v: v if v in kept else Fraction(0))


def parse_scale(document):
    data = load_document(StepScaleSchema(), document)
    return StepScale.from_pairs((s["value"], s["length"]) for s in data["steps"])


def load_scale(document, normalize=False):
    """A step scale from either a scale document or a function document."""
    if isinstance(document, dict) and "steps" in document:
        return parse_scale(document)
    return rearrange(parse_function(document, normalize=normalize))
