from marshmallow import ValidationError, fields, validates_schema

from majorise.extensions import ma
from majorise.schemas.fields import NumberField


class MatrixSchema(ma.Schema):
    n = fields.Integer(required=True, strict=True)
    re = fields.List(fields.List(NumberField()), required=True)
    im = fields.List(fields.List(NumberField()), load_default=None)

    @validates_schema
    def check_shape(self, data, **kwargs):
        n = data["n"]
        if n < 1:
            raise ValidationError("n must be positive", "n")
        for name in ("re", "im"):
            rows = data.get(name)
            if rows is None:
                continue
            if len(rows) != n or any(len(row) != n for row in rows):
                raise ValidationError(f"{name} must be an {n}x{n} array", name)


class VectorSchema(ma.Schema):
    values = fields.List(NumberField(), required=True)
