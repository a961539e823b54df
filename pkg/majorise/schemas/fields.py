from marshmallow import ValidationError, fields

from majorise.utils.exceptions import SchemaError
from majorise.utils.rationals import format_ratstr, parse_ratstr


class RationalField(fields.Field):
    """An exact rational given as a JSON integer or a "p/q" string."""

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        return format_ratstr(value)

    def _deserialize(self, value, attr, data, **kwargs):
        try:
            return parse_ratstr(value)
        except SchemaError as exc:
            raise ValidationError(exc.message) from exc


class NumberField(fields.Field):
    """A real number given as a JSON number or a rational literal."""

    def _deserialize(self, value, attr, data, **kwargs):
        if isinstance(value, bool):
            raise ValidationError("booleans are not numbers")
        if isinstance(value, (int, float)):
            return float(value)
        try:
            return float(parse_ratstr(value))
        except SchemaError as exc:
            raise ValidationError(exc.message) from exc
