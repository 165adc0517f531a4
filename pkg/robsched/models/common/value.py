"""
Exact processing-time values.

Every processing time, threshold and tolerance in the package is a
`fractions.Fraction`. A job that may not run on a machine carries the
`FORBIDDEN` marker instead of a number.
"""

from fractions import Fraction

FORBIDDEN_LITERAL = 'inf'


class _Forbidden(object):
    """ Marker for a machine a job cannot be assigned to.

    Compares greater than every finite value and absorbs addition.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other):
        if isinstance(other, (int, Fraction, _Forbidden)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __hash__(self):
        return hash(FORBIDDEN_LITERAL)

    def __lt__(self, other):
        if isinstance(other, (int, Fraction, _Forbidden)):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, (int, Fraction, _Forbidden)):
            return other is self
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, (int, Fraction, _Forbidden)):
            return other is not self
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (int, Fraction, _Forbidden)):
            return True
        return NotImplemented

    def __repr__(self):
        return 'FORBIDDEN'

    def __str__(self):
        return FORBIDDEN_LITERAL

    def __reduce__(self):
        return (_Forbidden, ())


FORBIDDEN = _Forbidden()


def to_value(raw, allow_forbidden=False):
    """ Convert user input (int, Fraction, "num/den" string or "inf") into a Value.

    Floats are refused: they would smuggle rounding error into exact comparisons.
    """
    if raw is FORBIDDEN or (isinstance(raw, str) and raw.strip().lower() == FORBIDDEN_LITERAL):
        if not allow_forbidden:
            raise ValueError("Forbidden entries are only allowed in unrelated processing matrices.")
        return FORBIDDEN
    if isinstance(raw, bool):
        raise ValueError(f"Cannot interpret boolean {raw!r} as a processing time.")
    if isinstance(raw, int):
        value = Fraction(raw)
    elif isinstance(raw, Fraction):
        value = raw
    elif isinstance(raw, str):
        # Fraction also reads signs, decimals and exponents, which are not "num/den"
        if not raw.strip().replace('/', '', 1).isdigit():
            raise ValueError(f"Cannot parse {raw!r} as a non-negative rational \"num/den\".")
        try:
            value = Fraction(raw)
        except ZeroDivisionError:
            raise ValueError(f"Zero denominator in {raw!r}.")
    else:
        raise ValueError(f"Unsupported value type {type(raw).__name__} for {raw!r}.")
    if value < 0:
        raise ValueError(f"Processing times must be non-negative, got {raw!r}.")
    return value


def format_value(value):
    """ Serialise a Value as "num/den" (or "num" when integral, "inf" when forbidden). """
    if value is FORBIDDEN:
        return FORBIDDEN_LITERAL
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def decimal_string(value, digits=6):
    """ Decimal rendering for human-readable reports. The exact form stays authoritative. """
    if value is None:
        return ''
    if value is FORBIDDEN:
        return FORBIDDEN_LITERAL
    return f"{float(value):.{digits}f}"
