from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from majorise.utils.exceptions import (
    DuplicateAtomError,
    MassMismatchError,
    NormalizationError,
    SchemaError,
    SpaceMismatchError,
    UnknownAtomError,
)
from majorise.utils.rationals import format_ratstr

ATOM = "atom"
PIECE = "piece"


@dataclass(frozen=True)
class Cell:
    """One atom or one diffuse piece of a simple function, with its value."""

    kind: str
    key: object
    mass: Fraction
    value: Fraction


@dataclass(frozen=True)
class MeasureSpace:
    atoms: tuple
    diffuse_mass: Fraction = Fraction(0)

    def __post_init__(self):
        atoms = tuple((str(atom_id), Fraction(weight)) for atom_id, weight in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "diffuse_mass", Fraction(self.diffuse_mass))

        ids = [atom_id for atom_id, _ in atoms]
        seen = set()
        for atom_id in ids:
            if atom_id in seen:
                raise DuplicateAtomError(message=f"atom id {atom_id!r} appears twice")
            seen.add(atom_id)
        for atom_id, weight in atoms:
            if weight <= 0:
                raise SchemaError(message=f"atom {atom_id!r} has non-positive weight")
        if self.diffuse_mass < 0:
            raise SchemaError(message="diffuse_mass must be non-negative")

        total = sum((w for _, w in atoms), Fraction(0)) + self.diffuse_mass
        if total != 1:
            raise NormalizationError(
                message=f"masses sum to {format_ratstr(total)}, expected 1",
                details={"total": format_ratstr(total)},
            )

    @classmethod
    def equal_weights(cls, n, prefix="a"):
        return cls(tuple((f"{prefix}{i + 1}", Fraction(1, n)) for i in range(n)))

    @property
    def atom_ids(self):
        return tuple(atom_id for atom_id, _ in self.atoms)

    def weight_of(self, atom_id):
        for key, weight in self.atoms:
            if key == atom_id:
                return weight
        raise UnknownAtomError(message=f"atom {atom_id!r} is not in the space")

    @property
    def is_atomic(self):
        return self.diffuse_mass == 0

    @property
    def is_atomless(self):
        return not self.atoms

    def serialize(self):
        return {
            "atoms": [{"id": atom_id, "weight": format_ratstr(w)} for atom_id, w in self.atoms],
            "diffuse_mass": format_ratstr(self.diffuse_mass),
        }


@dataclass(frozen=True)
class SimpleFunction:
    """A simple function on a MeasureSpace.

    Diffuse pieces are laid out consecutively on [0, diffuse_mass); pointwise
    arithmetic between two functions uses the common refinement of their
    piece boundaries. Adjacent pieces with equal values are kept apart.
    """

    space: MeasureSpace
    atom_values: object
    diffuse_pieces: tuple = ()

    def __post_init__(self):
        values = {str(k): Fraction(v) for k, v in dict(self.atom_values).items()}
        pieces = tuple((Fraction(v), Fraction(m)) for v, m in self.diffuse_pieces)
        object.__setattr__(self, "atom_values", MappingProxyType(values))
        object.__setattr__(self, "diffuse_pieces", pieces)

        ids = set(self.space.atom_ids)
        for key in values:
            if key not in ids:
                raise UnknownAtomError(message=f"value given for unknown atom {key!r}")
        missing = [key for key in self.space.atom_ids if key not in values]
        if missing:
            raise SchemaError(message=f"no value for atoms {missing}")
        for _, mass in pieces:
            if mass <= 0:
                raise SchemaError(message="diffuse piece masses must be positive")
        covered = sum((m for _, m in pieces), Fraction(0))
        if covered != self.space.diffuse_mass:
            raise MassMismatchError(
                message=(
                    f"diffuse pieces cover {format_ratstr(covered)}, "
                    f"space has diffuse_mass {format_ratstr(self.space.diffuse_mass)}"
                )
            )

    @classmethod
    def on_atoms(cls, space, values, pieces=()):
        return cls(space, dict(zip(space.atom_ids, values)), tuple(pieces))

    def cells(self):
        cells = [
            Cell(ATOM, atom_id, weight, self.atom_values[atom_id])
            for atom_id, weight in self.space.atoms
        ]
        cells.extend(
            Cell(PIECE, index, mass, value)
            for index, (value, mass) in enumerate(self.diffuse_pieces)
        )
        return cells

    def integral(self):
        return sum((c.mass * c.value for c in self.cells()), Fraction(0))

    def map(self, fn):
        return SimpleFunction(
            self.space,
            {k: fn(v) for k, v in self.atom_values.items()},
            tuple((fn(v), m) for v, m in self.diffuse_pieces),
        )

    def combine(self, other, op):
        if self.space != other.space:
            raise SpaceMismatchError(message="functions live on different measure spaces")
        atoms = {k: op(v, other.atom_values[k]) for k, v in self.atom_values.items()}
        return SimpleFunction(self.space, atoms, _merge_pieces(self.diffuse_pieces, other.diffuse_pieces, op))

    def __add__(self, other):
        return self.combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self.combine(other, lambda a, b: a - b)

    def __neg__(self):
        return self.map(lambda v: -v)

    def scale(self, factor):
        factor = Fraction(factor)
        return self.map(lambda v: v * factor)

    def shift(self, constant):
        constant = Fraction(constant)
        return self.map(lambda v: v + constant)

    def absolute(self):
        return self.map(abs)

    def is_zero(self):
        return all(c.value == 0 for c in self.cells())

    def equals_ae(self, other):
        return (self - other).is_zero()

    def serialize(self):
        return {
            "space": self.space.serialize(),
            "atoms": {k: format_ratstr(self.atom_values[k]) for k in self.space.atom_ids},
            "diffuse": [
                {"value": format_ratstr(v), "mass": format_ratstr(m)} for v, m in self.diffuse_pieces
            ],
        }


def _merge_pieces(left, right, op):
    merged = []
    i = j = 0
    rest_left = left[0][1] if left else Fraction(0)
    rest_right = right[0][1] if right else Fraction(0)
    while i < len(left) and j < len(right):
        step = min(rest_left, rest_right)
        merged.append((op(left[i][0], right[j][0]), step))
        rest_left -= step
        rest_right -= step
        if rest_left == 0:
            i += 1
            if i < len(left):
                rest_left = left[i][1]
        if rest_right == 0:
            j += 1
            if j < len(right):
                rest_right = right[j][1]
    return tuple(merged)


@dataclass(frozen=True)
class Refinement:
    """Splits of selected diffuse pieces into consecutive sub-pieces."""

    source: SimpleFunction
    splits: object

    def __post_init__(self):
        splits = {int(k): tuple(Fraction(m) for m in v) for k, v in dict(self.splits).items()}
        object.__setattr__(self, "splits", MappingProxyType(splits))
        pieces = self.source.diffuse_pieces
        for index, parts in splits.items():
            if not 0 <= index < len(pieces):
                raise SchemaError(message=f"no diffuse piece with index {index}")
            if any(m <= 0 for m in parts):
                raise SchemaError(message="sub-masses must be positive")
            if sum(parts, Fraction(0)) != pieces[index][1]:
                raise MassMismatchError(message=f"sub-masses of piece {index} do not sum to its mass")

    def apply(self):
        pieces = []
        for index, (value, mass) in enumerate(self.source.diffuse_pieces):
            for part in self.splits.get(index, (mass,)):
                pieces.append((value, part))
        return SimpleFunction(self.source.space, dict(self.source.atom_values), tuple(pieces))
