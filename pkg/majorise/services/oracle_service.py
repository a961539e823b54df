import logging
from fractions import Fraction

from majorise.config import setting
from majorise.models.measure import ATOM, SimpleFunction
from majorise.models.oracle import OrbitPolytope
from majorise.services.scale_service import cumulative, rearrange
from majorise.utils.exceptions import NotAtomic, NotInOrbit, SchemaError, SizeLimit, SpaceMismatchError
from majorise.utils.linalg import exact_rank
from majorise.utils.rng import make_rng

logger = logging.getLogger(__name__)


def _require_atomic(space, limit):
    if not space.is_atomic:
        raise NotAtomic(message="the oracle only handles purely atomic spaces")
    if len(space.atoms) > limit:
        raise SizeLimit(
            message=f"{len(space.atoms)} atoms exceeds the limit of {limit}",
            details={"atoms": len(space.atoms), "limit": limit},
        )


def orbit_polytope(y, space=None, max_atoms=None):
    space = space or y.space
    _require_atomic(space, setting("ORACLE_MAX_ATOMS", max_atoms))
    return OrbitPolytope(space, rearrange(y))


def tight_set(x, y, max_atoms=None):
    polytope = orbit_polytope(y, space=x.space, max_atoms=max_atoms)
    if not polytope.contains(x):
        raise NotInOrbit(message="x violates a subset constraint of the orbit polytope")
    return polytope.tight_set(x)


def oracle_extreme(x, y, max_atoms=None):
    """Vertex test: x is extreme iff the normals of its tight constraints span ℚⁿ."""
    if x.space != y.space:
        raise SpaceMismatchError(message="x and y live on different spaces")
    tight = tight_set(x, y, max_atoms=max_atoms)
    rank = exact_rank(tight.normals(x.space))
    logger.debug("%d tight subsets, rank %d of %d", len(tight.subsets), rank, len(x.space.atoms))
    return rank == len(x.space.atoms)


def enumerate_extreme(y, max_atoms=None):
    """All extreme points of Ω(y) on a purely atomic space, sorted canonically.

    Atoms are laid down left to right on [0, 1); an atom of weight w placed at
    cursor t takes the value (Φ_y(t+w) - Φ_y(t))/w. Concavity of Φ_y keeps the
    placed values non-increasing, and every extreme point arises from placing
    its atoms in level order.
    """
    space = y.space
    _require_atomic(space, setting("ENUMERATE_MAX_ATOMS", max_atoms))
    y_scale = rearrange(y)
    found = set()

    def place(t, remaining, values):
        if not remaining:
            found.add(tuple(values[a] for a in space.atom_ids))
            return
        phi = cumulative(y_scale, t)
        for atom_id in remaining:
            w = space.weight_of(atom_id)
            value = (cumulative(y_scale, t + w) - phi) / w
            place(t + w, [a for a in remaining if a != atom_id], {**values, atom_id: value})

    place(Fraction(0), list(space.atom_ids), {})
    logger.debug("%d extreme points for %d atoms", len(found), len(space.atoms))
    return [SimpleFunction.on_atoms(space, values) for values in sorted(found)]


def partial_average(f, cells):
    """Replace f on the given cells by their weighted mean.

    `cells` holds (kind, key) pairs as produced by SimpleFunction.cells().
    """
    chosen = {(kind, key) for kind, key in cells}
    selected = [c for c in f.cells() if (c.kind, c.key) in chosen]
    if len(selected) != len(chosen):
        raise SchemaError(message="partial average names a cell the function does not have")
    if not selected:
        return f
    mass = sum((c.mass for c in selected), Fraction(0))
    mean = sum((c.mass * c.value for c in selected), Fraction(0)) / mass

    atoms = dict(f.atom_values)
    pieces = list(f.diffuse_pieces)
    for c in selected:
        if c.kind == ATOM:
            atoms[c.key] = mean
        else:
            pieces[c.key] = (mean, c.mass)
    return SimpleFunction(f.space, atoms, tuple(pieces))


def sample_orbit(y, seed, steps=None):
    """A seeded element of Ω(y) built by composing random partial averages."""
    rng = make_rng(seed)
    cells = y.cells()
    if steps is None:
        steps = int(rng.integers(0, len(cells) + 1))
    x = y
    if len(cells) < 2:
        return x
    for _ in range(steps):
        size = int(rng.integers(2, len(cells) + 1))
        picked = rng.choice(len(cells), size=size, replace=False)
        x = partial_average(x, [(cells[i].kind, cells[i].key) for i in sorted(int(p) for p in picked)])
    return x
