from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from majorise.utils.rationals import format_ratstr


class LevelTag(str, Enum):
    SINGLE_ATOM = "single_atom"
    MULTIPLE_ATOMS = "multiple_atoms"
    DIFFUSE = "diffuse"
    MIXED = "mixed"


class CaseTag(str, Enum):
    THREE_VALUES = "three_values"
    TWO_VALUES = "two_values"
    SPLIT_LEVEL = "split_level"


@dataclass(frozen=True)
class LevelKind:
    tag: LevelTag
    atom_ids: tuple = ()

    @property
    def is_single_atom(self):
        return self.tag is LevelTag.SINGLE_ATOM

    def serialize(self):
        return {"kind": self.tag.value, "atoms": list(self.atom_ids)}


@dataclass(frozen=True)
class ConstancyInterval:
    t1: Fraction
    t2: Fraction
    value: Fraction
    kind: LevelKind

    @property
    def length(self):
        return self.t2 - self.t1

    def serialize(self):
        data = {
            "t1": format_ratstr(self.t1),
            "t2": format_ratstr(self.t2),
            "value": format_ratstr(self.value),
        }
        data.update(self.kind.serialize())
        return data


@dataclass(frozen=True)
class IntervalJustification:
    interval: ConstancyInterval
    condition: int | None  # 1, 2, or None when neither holds

    def serialize(self):
        data = self.interval.serialize()
        if self.condition is not None:
            data["condition"] = self.condition
        return data


@dataclass(frozen=True)
class Perturbation:
    u: object
    delta: Fraction
    case_tag: CaseTag
    region: tuple  # (s1, s4): the part of [0,1) where λ(x±) may differ from λ(x)


@dataclass(frozen=True)
class WitnessPair:
    x_plus: object
    x_minus: object
    perturbation: Perturbation

    def serialize(self):
        return {
            "x_plus": self.x_plus.serialize(),
            "x_minus": self.x_minus.serialize(),
            "delta": format_ratstr(self.perturbation.delta),
            "case": self.perturbation.case_tag.value,
            "region": [format_ratstr(t) for t in self.perturbation.region],
        }


@dataclass(frozen=True)
class ExtremalityVerdict:
    justifications: tuple
    witness: WitnessPair | None = field(default=None)

    @property
    def is_extreme(self):
        return all(j.condition is not None for j in self.justifications)

    def violations(self):
        return [j.interval for j in self.justifications if j.condition is None]

    def serialize(self, include_witness=True):
        data = {
            "verdict": "extreme" if self.is_extreme else "not_extreme",
            "intervals": [j.serialize() for j in self.justifications],
        }
        if include_witness and self.witness is not None:
            data["witness"] = self.witness.serialize()
        return data
