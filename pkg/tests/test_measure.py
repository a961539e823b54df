from fractions import Fraction

import pytest

from majorise.models.measure import MeasureSpace, SimpleFunction
from majorise.services.measure_service import (
    atomic_function,
    diffuse_function,
    parse_function,
    parse_space,
    refine_diffuse,
    split_piece,
)
from majorise.services.scale_service import rearrange
from majorise.utils.exceptions import (
    DuplicateAtomError,
    MassMismatchError,
    NormalizationError,
    SchemaError,
    SpaceMismatchError,
    UnknownAtomError,
)
from majorise.utils.rationals import format_ratstr, parse_ratstr

HALF_ATOM_SPACE = {"atoms": [{"id": "e", "weight": "1/2"}], "diffuse_mass": "1/2"}


def test_parse_ratstr_accepts_integers_and_fractions():
    assert parse_ratstr("3") == 3
    assert parse_ratstr("-6/4") == Fraction(-3, 2)
    assert parse_ratstr(7) == 7
    assert format_ratstr(Fraction(-3, 2)) == "-3/2"
    assert format_ratstr(Fraction(5)) == "5"


@pytest.mark.parametrize("raw", ["0.5", "1e3", "1/0", " 1", "1/2\n", "3\n", True, 0.5, "1/-2"])
def test_parse_ratstr_rejects_non_rational_literals(raw):
    with pytest.raises(SchemaError):
        parse_ratstr(raw)


def test_parse_space():
    space = parse_space(HALF_ATOM_SPACE)
    assert space.atoms == (("e", Fraction(1, 2)),)
    assert space.diffuse_mass == Fraction(1, 2)

    atomless = parse_space({"atoms": [], "diffuse_mass": "1"})
    assert atomless.is_atomless


def test_parse_space_errors():
    with pytest.raises(NormalizationError):
        parse_space({"atoms": [{"id": "e", "weight": "1/2"}], "diffuse_mass": "1/4"})
    with pytest.raises(DuplicateAtomError):
        parse_space(
            {"atoms": [{"id": "e", "weight": "1/2"}, {"id": "e", "weight": "1/2"}], "diffuse_mass": "0"}
        )
    with pytest.raises(SchemaError) as excinfo:
        parse_space({"atoms": [{"id": "e", "weight": "0.5"}], "diffuse_mass": "1/2"})
    assert "atoms" in excinfo.value.details


def test_parse_space_normalize_rescales():
    space = parse_space({"atoms": [{"id": "a", "weight": "1"}], "diffuse_mass": "3"}, normalize=True)
    assert space.weight_of("a") == Fraction(1, 4)
    assert space.diffuse_mass == Fraction(3, 4)


def test_parse_function():
    f = parse_function(
        {
            "space": HALF_ATOM_SPACE,
            "atoms": {"e": "3"},
            "diffuse": [{"value": "4", "mass": "1/4"}, {"value": "2", "mass": "1/4"}],
        }
    )
    assert f.atom_values["e"] == 3
    assert f.diffuse_pieces == ((4, Fraction(1, 4)), (2, Fraction(1, 4)))
    assert f.integral() == Fraction(3, 2) + 1 + Fraction(1, 2)


def test_parse_function_errors():
    space = parse_space(HALF_ATOM_SPACE)
    with pytest.raises(MassMismatchError):
        parse_function({"atoms": {"e": "1"}, "diffuse": [{"value": "1", "mass": "1/3"}]}, space=space)
    with pytest.raises(UnknownAtomError):
        parse_function(
            {"atoms": {"e": "1", "z": "2"}, "diffuse": [{"value": "1", "mass": "1/2"}]}, space=space
        )
    with pytest.raises(SchemaError):
        parse_function({"atoms": {"e": "1"}})
    with pytest.raises(SchemaError):
        parse_function("not an object", space=space)


def test_serialize_then_parse_gives_the_same_function():
    f = diffuse_function([(4, "1/4"), (2, "1/4")], atoms=[("e", "1/2", "-7/3")])
    assert parse_function(f.serialize()) == f


def test_refine_diffuse():
    f = diffuse_function([(4, "1/2"), (1, "1/2")])
    refined = refine_diffuse(f, 2)
    assert refined.diffuse_pieces[:2] == ((4, Fraction(1, 4)), (4, Fraction(1, 4)))
    assert refine_diffuse(f, 1) == f
    assert len(refine_diffuse(f, 3).diffuse_pieces) == 6
    for k in range(1, 9):
        assert rearrange(refine_diffuse(f, k)) == rearrange(f)
    assert refined.equals_ae(f)


def test_split_piece_keeps_the_function_almost_everywhere():
    f = diffuse_function([(4, "1/2"), (1, "1/2")])
    split = split_piece(f, 1, parts=4)
    assert len(split.diffuse_pieces) == 5
    assert split.equals_ae(f)


def test_equal_valued_atoms_stay_distinct():
    f = atomic_function(["1/2", "1/2"], [2, 2])
    assert [c.key for c in f.cells()] == ["a1", "a2"]


def test_arithmetic_uses_the_common_refinement():
    f = diffuse_function([(1, "1/2"), (3, "1/2")])
    g = SimpleFunction(f.space, {}, ((2, Fraction(1, 4)), (0, Fraction(3, 4))))
    total = f + g
    assert total.diffuse_pieces == (
        (3, Fraction(1, 4)),
        (1, Fraction(1, 4)),
        (3, Fraction(1, 2)),
    )
    assert (total - g).equals_ae(f)
    assert (-f).scale(-1) == f


def test_combine_on_different_spaces_fails():
    with pytest.raises(SpaceMismatchError):
        atomic_function(["1/2", "1/2"], [1, 2]) + atomic_function(["1/4", "3/4"], [1, 2])


def test_measure_space_requires_values_for_every_atom():
    space = MeasureSpace.equal_weights(2)
    with pytest.raises(SchemaError):
        SimpleFunction(space, {"a1": 1})
