"""Parsing and formatting of exact rationals (``"p/q"`` strings)."""
import math
from fractions import Fraction

from .errors import ValidationError

INF = math.inf


def frac(x):
    """Convert ints, Fractions, gmpy2 mpq and ``"p/q"`` strings to Fraction.

    Floats are rejected: every computation path is exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ValidationError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        raise ValidationError(f"float {x!r} given where an exact rational is required")
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse rational {x!r}") from exc
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    raise ValidationError(f"cannot convert {type(x).__name__} to a rational")


def parse_alpha(x):
    """Rational >= 1, or infinity given as ``inf``/``"inf"``/``math.inf``."""
    if isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "oo", "∞"):
        return INF
    if isinstance(x, float) and math.isinf(x) and x > 0:
        return INF
    a = frac(x)
    if a < 1:
        raise ValidationError(f"approximation factor must be >= 1, got {a}")
    return a


def fmt(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def is_inf(x):
    return isinstance(x, float) and math.isinf(x)
