from marshmallow import fields

from majorise.extensions import ma
from majorise.schemas.fields import RationalField


class StepSchema(ma.Schema):
    value = RationalField(required=True)
    length = RationalField(required=True)


class StepScaleSchema(ma.Schema):
    steps = fields.List(fields.Nested(StepSchema), required=True)
