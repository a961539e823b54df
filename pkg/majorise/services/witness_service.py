import logging
from fractions import Fraction

from majorise.models.measure import ATOM, PIECE, SimpleFunction
from majorise.models.verdict import CaseTag, Perturbation, WitnessPair
from majorise.services.extremality_service import evaluate_intervals, strict_slack_component
from majorise.services.measure_service import split_piece
from majorise.services.scale_service import cumulative, majorise_check, rearrange, union_breakpoints
from majorise.utils.exceptions import (
    CriterionSatisfied,
    DegenerateDirection,
    InvariantViolation,
    NotInOrbit,
    SpaceMismatchError,
)
from majorise.utils.rationals import format_ratstr

logger = logging.getLogger(__name__)


def _aligned_cells(x, u):
    """(mass, x value, u value) over the common refinement of x and u."""
    xs = x.combine(u, lambda a, _: a).cells()
    us = u.combine(x, lambda a, _: a).cells()
    return [(cx.mass, cx.value, cu.value) for cx, cu in zip(xs, us)]


def _ordering_bounds(cells):
    """Largest δ keeping the level order of x when moving along the cells' directions."""
    levels = {}
    for _, xv, w in cells:
        levels.setdefault(xv, []).append(w)
    values = sorted(levels, reverse=True)
    bounds = []
    for upper, lower in zip(values, values[1:]):
        closing = max(levels[lower]) - min(levels[upper])
        if closing > 0:
            bounds.append((upper - lower) / closing)
    return bounds


def _majorisation_bounds(cells, y_scale):
    """Bounds on δ from Φ_{x+δw}(t) ≤ Φ_y(t) at every breakpoint, with equality at 1.

    With the level order fixed, Φ_{x+δw}(t) = A(t) + δ B(t) is affine in δ.
    """
    ordered = sorted(cells, key=lambda c: (c[1], c[2]), reverse=True)
    starts = [Fraction(0)]
    for mass, _, _ in ordered:
        starts.append(starts[-1] + mass)
    points = sorted(set(starts) | set(y_scale.breakpoints()))

    bounds = []
    for t in points[1:]:
        a = b = Fraction(0)
        for (mass, xv, w), start in zip(ordered, starts):
            if start >= t:
                break
            part = min(mass, t - start)
            a += xv * part
            b += w * part
        slack = cumulative(y_scale, t) - a
        if t == 1:
            if b != 0:
                bounds.append(Fraction(0))
        elif b > 0:
            bounds.append(slack / b)
    return bounds


def admissible_delta(x, y, u):
    """Supremum δ* of δ ≥ 0 with x ± δu ≺ y and the level order of x preserved."""
    if u.space != x.space:
        raise SpaceMismatchError(message="direction and function live on different spaces")
    if u.is_zero():
        raise DegenerateDirection(message="the direction u is zero")
    x_scale, y_scale = rearrange(x), rearrange(y)
    if not majorise_check(x_scale, y_scale).holds:
        raise NotInOrbit(message="x is not majorised by y")

    base = _aligned_cells(x, u)
    bounds = []
    for sign in (1, -1):
        cells = [(m, xv, sign * uv) for m, xv, uv in base]
        bounds.extend(_ordering_bounds(cells))
        bounds.extend(_majorisation_bounds(cells, y_scale))
    if not bounds:
        raise DegenerateDirection(message="no constraint bounds the direction")
    delta_star = min(bounds)
    logger.debug("admissible delta %s from %d constraints", format_ratstr(delta_star), len(bounds))
    return delta_star


def level_indicator(x, value):
    return x.map(lambda v: Fraction(1) if v == value else Fraction(0))


def split_level_direction(x, interval):
    """Split the level set of `interval.value` into p1 (first atom or piece) and p2 (the rest).

    A level made of one diffuse piece is first refined into two halves.
    Returns the (possibly refined) x and u = 1_{p1} - ν(p1)/ν(p2)·1_{p2}.
    """
    level = [c for c in x.cells() if c.value == interval.value]
    if len(level) == 1 and level[0].kind == PIECE:
        x = split_piece(x, level[0].key)
        level = [c for c in x.cells() if c.value == interval.value]
    first, rest = level[0], level[1:]
    ratio = first.mass / sum((c.mass for c in rest), Fraction(0))

    def weight(cell):
        if cell.kind == first.kind and cell.key == first.key:
            return Fraction(1)
        if cell.value == interval.value:
            return -ratio
        return Fraction(0)

    cells = x.cells()
    atoms = {c.key: weight(c) for c in cells if c.kind == ATOM}
    pieces = tuple((weight(c), c.mass) for c in cells if c.kind == PIECE)
    return x, SimpleFunction(x.space, atoms, pieces)


def perturb(x, u, delta):
    """The pair x + δu, x - δu."""
    step = u.scale(delta)
    return x + step, x - step


def _balancing_direction(x, upper, lower):
    ratio = upper.length / lower.length
    return level_indicator(x, upper.value) - level_indicator(x, lower.value).scale(ratio)


def build_witness(x, y):
    x_scale, y_scale = rearrange(x), rearrange(y)
    if not majorise_check(x_scale, y_scale).holds:
        raise NotInOrbit(message="x is not majorised by y")

    justifications = evaluate_intervals(x, y_scale)
    failing = [i for i, j in enumerate(justifications) if j.condition is None]
    if not failing:
        raise CriterionSatisfied(message="x satisfies the extremality criterion; no witness exists")
    index = failing[0]
    intervals = [j.interval for j in justifications]
    interval = intervals[index]

    work = x
    if not interval.kind.is_single_atom:
        case = CaseTag.SPLIT_LEVEL
        work, u = split_level_direction(x, interval)
        region = (interval.t1, interval.t2)
    else:
        lo, hi = strict_slack_component(intervals, x_scale, y_scale, index)
        if hi - lo + 1 >= 3:
            case = CaseTag.THREE_VALUES
            upper, lower = intervals[lo + 1], intervals[lo + 2]
        elif hi > lo:
            case = CaseTag.TWO_VALUES
            upper, lower = intervals[lo], intervals[hi]
        else:
            raise InvariantViolation(
                message="violating single-atom level without a surrounding strict-slack region"
            )
        u = _balancing_direction(x, upper, lower)
        region = (upper.t1, lower.t2)

    delta_star = admissible_delta(work, y, u)
    if delta_star <= 0:
        raise InvariantViolation(message=f"no room to perturb x in case {case.value}")
    delta = delta_star / 2
    x_plus, x_minus = perturb(work, u, delta)
    pair = WitnessPair(x_plus, x_minus, Perturbation(u, delta, case, region))
    logger.debug(
        "witness case=%s region=[%s,%s) delta=%s",
        case.value,
        format_ratstr(region[0]),
        format_ratstr(region[1]),
        format_ratstr(delta),
    )
    if not verify_witness(x, y, pair):
        raise InvariantViolation(message="constructed witness failed verification")
    return pair


def verify_witness(x, y, w):
    try:
        midpoint = (w.x_plus + w.x_minus).scale(Fraction(1, 2))
        if not midpoint.equals_ae(x):
            logger.debug("witness rejected: midpoint differs from x")
            return False
        if w.x_plus.equals_ae(w.x_minus):
            logger.debug("witness rejected: x+ equals x-")
            return False
    except SpaceMismatchError:
        return False

    x_scale, y_scale = rearrange(x), rearrange(y)
    for point in (w.x_plus, w.x_minus):
        if not majorise_check(rearrange(point), y_scale).holds:
            logger.debug("witness rejected: perturbed point leaves the orbit")
            return False

    s1, s4 = w.perturbation.region
    for point in (w.x_plus, w.x_minus):
        scale = rearrange(point)
        if scale.restrict(0, s1) != x_scale.restrict(0, s1) or scale.restrict(s4, 1) != x_scale.restrict(s4, 1):
            logger.debug("witness rejected: scale changed outside the perturbed region")
            return False

    if w.perturbation.case_tag in (CaseTag.THREE_VALUES, CaseTag.TWO_VALUES):
        for t in union_breakpoints(x_scale, y_scale):
            if s1 < t < s4 and cumulative(y_scale, t) - cumulative(x_scale, t) <= 0:
                logger.debug("witness rejected: slack vanishes inside the perturbed region")
                return False
    return True
