from marshmallow import fields

from majorise.extensions import ma
from majorise.schemas.fields import RationalField


class AtomSchema(ma.Schema):
    id = fields.String(required=True)
    weight = RationalField(required=True)


class SpaceSchema(ma.Schema):
    atoms = fields.List(fields.Nested(AtomSchema), required=True)
    diffuse_mass = RationalField(required=True)


class PieceSchema(ma.Schema):
    value = RationalField(required=True)
    mass = RationalField(required=True)


class FunctionSchema(ma.Schema):
    space = fields.Nested(SpaceSchema)
    atoms = fields.Dict(keys=fields.String(), values=RationalField(), load_default=dict)
    diffuse = fields.List(fields.Nested(PieceSchema), load_default=list)
