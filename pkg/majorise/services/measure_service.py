import logging
from fractions import Fraction

from marshmallow import ValidationError

from majorise.models.measure import MeasureSpace, Refinement, SimpleFunction
from majorise.schemas.measure_schema import FunctionSchema, SpaceSchema
from majorise.utils.exceptions import NormalizationError, SchemaError
from majorise.utils.rationals import format_ratstr

logger = logging.getLogger(__name__)


def load_document(schema, document):
    if not isinstance(document, dict):
        raise SchemaError(message="expected a JSON object")
    try:
        return schema.load(document)
    except ValidationError as exc:
        raise SchemaError(message="document does not match the schema", details=exc.messages) from exc


def _normalizer(data):
    total = sum((a["weight"] for a in data["atoms"]), Fraction(0)) + data["diffuse_mass"]
    if total <= 0:
        raise NormalizationError(message="cannot normalize a space of non-positive total mass")
    if total != 1:
        logger.info("rescaling space of total mass %s to 1", format_ratstr(total))
    return total


def parse_space(document, normalize=False):
    data = load_document(SpaceSchema(), document)
    factor = _normalizer(data) if normalize else Fraction(1)
    return MeasureSpace(
        tuple((a["id"], a["weight"] / factor) for a in data["atoms"]),
        data["diffuse_mass"] / factor,
    )


def parse_function(document, space=None, normalize=False):
    """Load a function document.

    The space comes from the document's "space" entry unless one is passed
    in; when both are present they must agree.
    """
    data = load_document(FunctionSchema(), document)
    factor = Fraction(1)
    if "space" in data:
        if normalize:
            factor = _normalizer(data["space"])
        embedded = MeasureSpace(
            tuple((a["id"], a["weight"] / factor) for a in data["space"]["atoms"]),
            data["space"]["diffuse_mass"] / factor,
        )
        if space is not None and embedded != space:
            raise SchemaError(message="function document names a different space")
        space = embedded
    if space is None:
        raise SchemaError(message="function document has no space", details={"space": ["missing"]})
    pieces = tuple((p["value"], p["mass"] / factor) for p in data["diffuse"])
    return SimpleFunction(space, data["atoms"], pieces)


def refine_diffuse(f, k):
    """Split every diffuse piece into k equal-mass pieces of the same value."""
    if k < 1:
        raise SchemaError(message="refinement factor must be at least 1")
    splits = {i: (mass / k,) * k for i, (_, mass) in enumerate(f.diffuse_pieces)}
    return Refinement(f, splits).apply()


def split_piece(f, index, parts=2):
    """Split one diffuse piece into `parts` equal sub-pieces."""
    mass = f.diffuse_pieces[index][1]
    return Refinement(f, {index: (mass / parts,) * parts}).apply()


def atomic_function(weights, values, ids=None):
    """Convenience builder for a function on a purely atomic space."""
    ids = ids or [f"a{i + 1}" for i in range(len(weights))]
    space = MeasureSpace(tuple(zip(ids, (Fraction(w) for w in weights))))
    return SimpleFunction.on_atoms(space, [Fraction(v) for v in values])


def diffuse_function(pieces, atoms=()):
    """Builder for a function whose space is the given atoms plus the pieces' mass."""
    pieces = tuple((Fraction(v), Fraction(m)) for v, m in pieces)
    atoms = tuple((atom_id, Fraction(w), Fraction(v)) for atom_id, w, v in atoms)
    space = MeasureSpace(
        tuple((atom_id, w) for atom_id, w, _ in atoms),
        sum((m for _, m in pieces), Fraction(0)),
    )
    return SimpleFunction(space, {atom_id: v for atom_id, _, v in atoms}, pieces)
