from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from majorise.models.scale import StepScale
from majorise.services.scale_service import cumulative


@dataclass(frozen=True)
class TightSet:
    """Atom subsets whose orbit constraints are active at a point."""

    subsets: tuple

    def normals(self, space):
        """Rows w·1_S, one per tight subset, in the space's atom order."""
        rows = []
        for subset in self.subsets:
            members = set(subset)
            rows.append([w if atom_id in members else Fraction(0) for atom_id, w in space.atoms])
        return rows

    def serialize(self):
        return {"tight": [list(s) for s in self.subsets]}


@dataclass(frozen=True)
class OrbitPolytope:
    """{x : x ≺ y} on a purely atomic space, as subset inequalities plus one equality.

    Σ_{i∈S} wᵢxᵢ ≤ Φ_y(w(S)) for every nonempty S, and Σᵢ wᵢxᵢ = Φ_y(1).
    """

    space: object
    y_scale: StepScale

    @property
    def constraint_count(self):
        return 2 ** len(self.space.atoms)

    def subsets(self):
        ids = self.space.atom_ids
        for size in range(1, len(ids) + 1):
            yield from combinations(ids, size)

    def bound(self, subset):
        mass = sum((self.space.weight_of(a) for a in subset), Fraction(0))
        return cumulative(self.y_scale, mass)

    def lhs(self, x, subset):
        return sum((self.space.weight_of(a) * x.atom_values[a] for a in subset), Fraction(0))

    def contains(self, x):
        if self.lhs(x, self.space.atom_ids) != cumulative(self.y_scale, 1):
            return False
        return all(self.lhs(x, s) <= self.bound(s) for s in self.subsets())

    def tight_set(self, x):
        return TightSet(tuple(s for s in self.subsets() if self.lhs(x, s) == self.bound(s)))
