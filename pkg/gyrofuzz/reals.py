"""Exact real numbers for exact mode.

Rationals stay ``Fraction``. Quantities that leave the rationals (the
modulus of a Gaussian-rational point, the real limit of a Cauchy fixture)
are sympy expressions.

A comparison involving an expression decides the sign of the difference:
a strict ``evalf`` settles every nonzero difference, and a difference that
numerics cannot separate from zero must be proved zero through its minimal
polynomial. Nothing undecided is ever reported as equal.
"""
import logging
import math
from fractions import Fraction
from numbers import Rational
from typing import Tuple

import sympy
from sympy.core.evalf import PrecisionExhausted
from sympy.polys.polyerrors import NotAlgebraic

from .conf import settings
from .exceptions import DomainError

logger = logging.getLogger(__name__)

# significant digits asked of evalf before a sign is trusted
SIGN_DIGITS = 30

_x = sympy.Symbol("x")


def to_fraction(value) -> Fraction:
    """Convert an int, rational, float or ``"p/q"``/decimal string to a Fraction.

    Floats go through ``repr`` so that ``0.19`` becomes ``19/100``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"non-finite value {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational literal: {value!r}") from exc
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot convert {type(value).__name__} to Fraction")


def is_symbolic(value) -> bool:
    return isinstance(value, sympy.Basic)


def exact(value):
    """Fractions for rational values, sympy expressions otherwise."""
    if isinstance(value, sympy.Rational):
        return to_fraction(value)
    return value


def sqrt(value):
    """Square root; a Fraction on perfect squares, a sympy expression otherwise."""
    if isinstance(value, float):
        if value < 0:
            raise DomainError(f"square root of negative value {value}")
        return math.sqrt(value)
    q = to_fraction(value)
    if q < 0:
        raise DomainError(f"square root of negative value {q}")
    return exact(sympy.sqrt(sympy.Rational(q.numerator, q.denominator)))


def parse_real(text: str):
    """A real constant written as a sympy expression, e.g. ``"sqrt(2)+sqrt(3)"``."""
    try:
        value = sympy.sympify(text, rational=True)
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise DomainError(f"not a real expression: {text!r}") from exc
    if not isinstance(value, sympy.Expr) or not value.is_number or value.is_real is False:
        raise DomainError(f"not a real constant: {text!r}")
    return exact(value)


def _is_zero(expr) -> bool:
    if expr.is_zero is not None:
        return bool(expr.is_zero)
    try:
        # an algebraic number is zero exactly when its minimal polynomial is x
        return sympy.minimal_polynomial(expr, _x) == _x
    except (NotAlgebraic, NotImplementedError):
        verdict = expr.equals(0)
    if verdict is None:
        raise DomainError(f"cannot decide whether {expr} is zero")
    return verdict


def sign(value) -> int:
    """Sign of an exact value; raises DomainError when it cannot be decided."""
    if not is_symbolic(value):
        return (value > 0) - (value < 0)
    expr = sympy.sympify(value)
    if expr.is_Rational:
        return (expr > 0) - (expr < 0)
    try:
        approx = expr.evalf(SIGN_DIGITS, maxn=settings.REAL_MAX_DIGITS, strict=True)
    except PrecisionExhausted:
        approx = None
    if approx is not None and approx.is_Number and approx != 0:
        return 1 if approx > 0 else -1
    logger.debug("sign of %s not settled numerically, testing for zero", expr)
    if _is_zero(expr):
        return 0
    raise DomainError(
        f"cannot decide the sign of {expr} within {settings.REAL_MAX_DIGITS} digits"
    )


def compare(a, b) -> int:
    """Three-way comparison; exact unless a float is involved."""
    if isinstance(a, float) or isinstance(b, float):
        fa, fb = float(a), float(b)
        return (fa > fb) - (fa < fb)
    if not is_symbolic(a) and not is_symbolic(b):
        return (a > b) - (a < b)
    return sign(sympy.sympify(a) - sympy.sympify(b))


def minimum(a, b):
    if is_symbolic(a) or is_symbolic(b):
        if isinstance(a, float) or isinstance(b, float):
            return min(float(a), float(b))
        return a if compare(a, b) <= 0 else b
    return min(a, b)


def maximum(a, b):
    if is_symbolic(a) or is_symbolic(b):
        if isinstance(a, float) or isinstance(b, float):
            return max(float(a), float(b))
        return a if compare(a, b) >= 0 else b
    return max(a, b)


def floor(value) -> int:
    if is_symbolic(value):
        return int(sympy.floor(value))
    return math.floor(value)


def tolerance_for(*values, tolerance=None):
    if tolerance is not None:
        return tolerance
    if any(isinstance(v, float) for v in values):
        return settings.FLOAT_TOLERANCE
    return 0


def check_ge(lhs, rhs, tolerance=None) -> Tuple[bool, float]:
    """Decide ``lhs >= rhs``; returns the verdict and the violation amount."""
    tol = tolerance_for(lhs, rhs, tolerance=tolerance)
    if tol:
        gap = float(rhs) - float(lhs)
        return gap <= tol, max(0.0, gap)
    if compare(lhs, rhs) >= 0:
        return True, 0.0
    return False, max(0.0, float(rhs) - float(lhs))


def check_eq(lhs, rhs, tolerance=None) -> Tuple[bool, float]:
    tol = tolerance_for(lhs, rhs, tolerance=tolerance)
    if tol:
        gap = abs(float(lhs) - float(rhs))
        return gap <= tol, gap
    if compare(lhs, rhs) == 0:
        return True, 0.0
    return False, abs(float(lhs) - float(rhs))


def format_number(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, sympy.Rational):
        return str(to_fraction(value))
    if isinstance(value, sympy.Expr) and value.is_number:
        return f"{float(value):.17g}"
    return str(value)
