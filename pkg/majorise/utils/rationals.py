import re
from fractions import Fraction

from majorise.utils.exceptions import SchemaError

RATSTR = re.compile(r"-?[0-9]+(/[0-9]+)?")


def parse_ratstr(raw):
    """Parse an integer or a "p/q" string into an exact Fraction.

    Floats and decimal strings are rejected so that inputs stay bit-exact.
    """
    if isinstance(raw, bool):
        raise SchemaError(message=f"not a rational literal: {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if not isinstance(raw, str) or not RATSTR.fullmatch(raw):
        raise SchemaError(message=f"not a rational literal: {raw!r}")
    if "/" in raw:
        num, den = raw.split("/")
        if int(den) == 0:
            raise SchemaError(message=f"zero denominator in {raw!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(raw))


def format_ratstr(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
