from fractions import Fraction

import pytest

from majorise.models.measure import SimpleFunction
from majorise.models.verdict import LevelTag
from majorise.services.extremality_service import (
    check_extreme,
    classify_level,
    constancy_intervals,
    evaluate_intervals,
    strict_slack_component,
)
from majorise.services.measure_service import atomic_function, diffuse_function, refine_diffuse
from majorise.services.oracle_service import enumerate_extreme, sample_orbit
from majorise.services.scale_service import cumulative, majorise_check, rearrange, union_breakpoints
from majorise.services.selftest_service import inverse_sqrt_profile, truncation_pair
from majorise.utils.exceptions import NotInOrbit, ValueNotAttained
from majorise.utils.rng import make_rng
from tests.conftest import equal


def conditions(verdict):
    return [j.condition for j in verdict.justifications]


def test_constancy_intervals():
    first, second = constancy_intervals(equal(3, 1))
    assert (first.t1, first.t2, first.value) == (0, Fraction(1, 2), 3)
    assert first.kind.tag is LevelTag.SINGLE_ATOM
    assert (second.t1, second.t2, second.value) == (Fraction(1, 2), 1, 1)

    (only,) = constancy_intervals(equal(2, 2))
    assert only.kind.tag is LevelTag.MULTIPLE_ATOMS
    assert only.kind.atom_ids == ("a1", "a2")


def test_classify_level():
    mixed = diffuse_function([(2, "1/2"), (4, "1/4")], atoms=[("e", "1/4", 2)])
    assert classify_level(mixed, 2).tag is LevelTag.MIXED
    assert classify_level(mixed, 4).tag is LevelTag.DIFFUSE
    assert classify_level(equal(3, 1), 3).tag is LevelTag.SINGLE_ATOM
    with pytest.raises(ValueNotAttained):
        classify_level(equal(3, 1), 2)


def test_mixed_level_spans_the_whole_interval():
    x = diffuse_function([(2, "1/2")], atoms=[("e", "1/2", 2)])
    (only,) = constancy_intervals(x)
    assert (only.t1, only.t2) == (0, 1)
    assert only.kind.tag is LevelTag.MIXED


def test_permutation_is_extreme():
    verdict = check_extreme(equal(1, 3), equal(3, 1))
    assert verdict.is_extreme
    assert conditions(verdict) == [1, 1]
    assert verdict.witness is None


def test_average_is_not_extreme():
    verdict = check_extreme(equal(2, 2), equal(3, 1))
    assert not verdict.is_extreme
    assert conditions(verdict) == [None]
    assert verdict.witness is not None
    assert check_extreme(equal(2, 2), equal(3, 1), with_witness=False).witness is None


def test_weighted_single_atom_level(weighted_pair):
    x, y = weighted_pair
    verdict = check_extreme(x, y)
    assert verdict.is_extreme
    assert conditions(verdict) == [1, 2, 1]
    middle = verdict.justifications[1].interval
    assert (middle.t1, middle.t2) == (Fraction(1, 4), Fraction(3, 4))
    assert middle.kind.atom_ids == ("a",)


def test_diffuse_plus_atom_extreme_point():
    y = diffuse_function([(4, "1/4"), (2, "1/4")], atoms=[("e", "1/2", 0)])
    x = SimpleFunction(y.space, {"e": 3}, ((0, Fraction(1, 2)),))
    verdict = check_extreme(x, y)
    assert verdict.is_extreme
    assert conditions(verdict) == [2, 1]


def test_condition_two_needs_a_single_atom():
    x, y = equal(2, 2), equal(3, 1)
    assert [j.condition for j in evaluate_intervals(x, rearrange(y))] == [None]
    assert [j.condition for j in evaluate_intervals(x, rearrange(y), require_atom=False)] == [2]


def test_x_outside_the_orbit():
    with pytest.raises(NotInOrbit) as excinfo:
        check_extreme(equal(3, 1), equal(2, 2))
    assert excinfo.value.details["holds"] is False


def test_serialized_verdict():
    data = check_extreme(equal(2, 2), equal(3, 1)).serialize()
    assert data["verdict"] == "not_extreme"
    assert data["intervals"][0]["kind"] == "multiple_atoms"
    assert "condition" not in data["intervals"][0]
    assert [i["condition"] for i in check_extreme(equal(1, 3), equal(3, 1)).serialize()["intervals"]] == [1, 1]
    assert data["witness"]["case"] == "split_level"


def test_strict_slack_component():
    x, y = equal(5, 4, 3, 2), equal(8, 4, 2, 0)
    intervals = [j.interval for j in evaluate_intervals(x, rearrange(y))]
    assert strict_slack_component(intervals, rearrange(x), rearrange(y), 0) == (0, 3)

    x, y = equal(4, 2, 1, 1), equal(4, 3, 1, 0)
    intervals = [j.interval for j in evaluate_intervals(x, rearrange(y))]
    assert strict_slack_component(intervals, rearrange(x), rearrange(y), 1) == (1, 2)


@pytest.mark.parametrize("values", [(3, 1), (2, 2), (4, 2, 0), (3, 3, 0), (5, 1, 1, 1)])
def test_enumerated_points_are_extreme(values):
    y = equal(*values)
    for x in enumerate_extreme(y):
        assert check_extreme(x, y).is_extreme


def test_atomless_extreme_iff_equimeasurable():
    y = diffuse_function([(4, "1/4"), (2, "1/4"), (0, "1/2")])
    swapped = SimpleFunction(y.space, {}, ((0, Fraction(1, 2)), (2, Fraction(1, 4)), (4, Fraction(1, 4))))
    assert check_extreme(swapped, y).is_extreme
    assert check_extreme(refine_diffuse(y, 3), y).is_extreme

    averaged = sample_orbit(y, 3, steps=2)
    assert check_extreme(averaged, y).is_extreme == (rearrange(averaged) == rearrange(y))


def test_truncation_family_is_extreme():
    profile = inverse_sqrt_profile(pieces=4)
    values = [v for v, _ in profile]
    assert values == sorted(values, reverse=True)
    assert sum((m for _, m in profile), Fraction(0)) == Fraction(1, 2)
    for cut in range(len(profile) + 1):
        x, y = truncation_pair(profile, cut)
        assert check_extreme(x, y).is_extreme


def extreme_pairs():
    weighted_y = atomic_function(["1/2", "1/4", "1/4"], [4, 2, 0], ids=["a", "b", "c"])
    weighted_x = atomic_function(["1/2", "1/4", "1/4"], [3, 4, 0], ids=["a", "b", "c"])
    two_atom_y = atomic_function(["2/3", "1/3"], [3, 0], ids=["A", "B"])
    mixed_y = diffuse_function([(4, "1/4"), (2, "1/4")], atoms=[("e", "1/2", 0)])
    mixed_x = SimpleFunction(mixed_y.space, {"e": 3}, ((0, Fraction(1, 2)),))
    pairs = [(equal(1, 3), equal(3, 1)), (weighted_x, weighted_y), (mixed_x, mixed_y)]
    pairs += [(x, two_atom_y) for x in enumerate_extreme(two_atom_y)]
    pairs.append(truncation_pair(inverse_sqrt_profile(pieces=4), 2))
    return pairs


def random_direction(rng, x):
    """Rational u with ∫u = 0, free on every atom and on each quarter of every diffuse piece."""
    pieces = refine_diffuse(x, 4).diffuse_pieces
    atoms = {a: Fraction(int(rng.integers(-3, 4))) for a in x.space.atom_ids}
    u = SimpleFunction(x.space, atoms, tuple((Fraction(int(rng.integers(-3, 4))), m) for _, m in pieces))
    return u.shift(-u.integral())


def both_in_orbit(x, y, u, delta):
    y_scale = rearrange(y)
    return all(majorise_check(rearrange(x + u.scale(s)), y_scale).holds for s in (delta, -delta))


DELTAS = [Fraction(1, 2**k) for k in range(12)]


@pytest.mark.parametrize("index", range(len(extreme_pairs())))
def test_extreme_points_admit_no_perturbation(index):
    x, y = extreme_pairs()[index]
    assert check_extreme(x, y).is_extreme
    rng = make_rng(index)
    for _ in range(40):
        u = random_direction(rng, x)
        if u.is_zero():
            continue
        assert not any(both_in_orbit(x, y, u, delta) for delta in DELTAS)


def test_perturbation_search_finds_room_when_not_extreme():
    assert both_in_orbit(equal(2, 2), equal(3, 1), equal(1, -1), Fraction(1, 2))


@pytest.mark.parametrize("index", range(len(extreme_pairs())))
def test_strict_slack_of_an_extreme_point_sits_in_condition_two_intervals(index):
    x, y = extreme_pairs()[index]
    x_scale, y_scale = rearrange(x), rearrange(y)
    points = union_breakpoints(x_scale, y_scale)
    points = sorted(set(points) | {(a + b) / 2 for a, b in zip(points, points[1:])})
    justifications = check_extreme(x, y).justifications
    for t in points:
        if cumulative(y_scale, t) - cumulative(x_scale, t) > 0:
            (owner,) = [j for j in justifications if j.interval.t1 <= t < j.interval.t2]
            assert owner.condition == 2
