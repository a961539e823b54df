import logging

from majorise.models.measure import ATOM, PIECE
from majorise.models.verdict import (
    ConstancyInterval,
    ExtremalityVerdict,
    IntervalJustification,
    LevelKind,
    LevelTag,
)
from majorise.services.scale_service import cumulative, majorise_check, rearrange
from majorise.utils.exceptions import NotInOrbit, ValueNotAttained
from majorise.utils.rationals import format_ratstr

logger = logging.getLogger(__name__)


def classify_level(x, v):
    atoms = tuple(c.key for c in x.cells() if c.kind == ATOM and c.value == v)
    has_pieces = any(c.kind == PIECE and c.value == v for c in x.cells())
    if not atoms and not has_pieces:
        raise ValueNotAttained(message=f"{format_ratstr(v)} is not a value of the function")
    if not has_pieces:
        tag = LevelTag.SINGLE_ATOM if len(atoms) == 1 else LevelTag.MULTIPLE_ATOMS
    else:
        tag = LevelTag.MIXED if atoms else LevelTag.DIFFUSE
    return LevelKind(tag, atoms)


def constancy_intervals(x):
    return [
        ConstancyInterval(t1, t2, value, classify_level(x, value))
        for t1, t2, value in rearrange(x).intervals()
    ]


def condition_one(interval, y_scale):
    """λ(y) equals the level value on the whole interval."""
    return all(v == interval.value for v, _ in y_scale.restrict(interval.t1, interval.t2))


def condition_two(interval, y_scale, require_atom=True):
    """The level set is one atom and λ(y) averages to the level value over it."""
    if require_atom and not interval.kind.is_single_atom:
        return False
    mass_of_y = cumulative(y_scale, interval.t2) - cumulative(y_scale, interval.t1)
    return mass_of_y == interval.value * interval.length


def evaluate_intervals(x, y_scale, require_atom=True):
    """Justify each constancy interval of λ(x) by condition 1, condition 2, or neither.

    Condition 2 does not depend on the point t inside an interval, and
    condition 1 failing anywhere on it leaves only condition 2, so the
    pointwise criterion reduces to one test per interval.
    """
    justifications = []
    for interval in constancy_intervals(x):
        if condition_one(interval, y_scale):
            condition = 1
        elif condition_two(interval, y_scale, require_atom=require_atom):
            condition = 2
        else:
            condition = None
        justifications.append(IntervalJustification(interval, condition))
    return tuple(justifications)


def strict_slack_component(intervals, x_scale, y_scale, index):
    """Indices (lo, hi) of the run of constancy intervals around `index` joined by
    strictly positive slack Φ_y − Φ_x at their shared endpoints."""

    def slack(t):
        return cumulative(y_scale, t) - cumulative(x_scale, t)

    lo = hi = index
    while lo > 0 and slack(intervals[lo].t1) > 0:
        lo -= 1
    while hi < len(intervals) - 1 and slack(intervals[hi].t2) > 0:
        hi += 1
    return lo, hi


def check_extreme(x, y, with_witness=True):
    from majorise.services.witness_service import build_witness

    x_scale, y_scale = rearrange(x), rearrange(y)
    report = majorise_check(x_scale, y_scale)
    if not report.holds:
        raise NotInOrbit(message="x is not majorised by y", details=report.serialize())

    justifications = evaluate_intervals(x, y_scale)
    verdict = ExtremalityVerdict(justifications)
    logger.debug(
        "intervals: %s",
        [(format_ratstr(j.interval.t1), format_ratstr(j.interval.t2), j.condition) for j in justifications],
    )
    if verdict.is_extreme or not with_witness:
        return verdict
    return ExtremalityVerdict(justifications, witness=build_witness(x, y))
