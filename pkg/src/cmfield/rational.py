"""Arbitrary-precision rational scalars.

Every exact computation in this package runs over rationals in lowest
terms.  gmpy2's mpq is used when available (it is much faster on the
multi-thousand-digit values that show up in long walks); fractions.Fraction
is a drop-in fallback with identical semantics for everything we use.
"""

from __future__ import annotations

import math
from fractions import Fraction

try:
    from gmpy2 import mpq as Q  # type: ignore[import-untyped]

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Q = Fraction
    HAVE_GMPY2 = False

#: ln 2, used to turn bit lengths into natural logs.
_LN2 = math.log(2)

#: Mantissa width for big-integer logarithms.
_LOG_BITS = 64

QLike = object  # int | Fraction | mpq | str accepted by rat()


def rat(value, den=None):
    """Coerce to the canonical rational type (lowest terms, den > 0)."""
    if den is not None:
        return Q(value) / Q(den)
    if isinstance(value, str):
        return rat_from_str(value)
    return Q(value)


def rat_from_str(text):
    """Parse 'a', 'a/b' or a decimal string like '-3.25' exactly."""
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        d = int(den)
        if d == 0:
            raise ZeroDivisionError("rational literal with zero denominator: %r" % text)
        return Q(int(num), d)
    if "." in s or "e" in s or "E" in s:
        return decimal_str_to_rat(s)[0]
    return Q(int(s))


def decimal_str_to_rat(text):
    """Exact rational value of a decimal string, plus its resolution.

    Returns (value, ulp) where ulp = 10**-places is the spacing of the
    decimal grid the string lives on.  Scientific notation is accepted.
    """
    s = text.strip()
    mant, exp = s, 0
    for marker in ("e", "E"):
        if marker in mant:
            mant, _, e = mant.partition(marker)
            exp = int(e)
    sign = 1
    if mant.startswith(("+", "-")):
        sign = -1 if mant[0] == "-" else 1
        mant = mant[1:]
    if "." in mant:
        intpart, _, fracpart = mant.partition(".")
    else:
        intpart, fracpart = mant, ""
    if not (intpart + fracpart).isdigit() or not (intpart + fracpart):
        raise ValueError("not a decimal literal: %r" % text)
    places = len(fracpart) - exp
    digits = int(intpart + fracpart) if (intpart + fracpart) else 0
    value = Q(sign * digits, 1)
    if places > 0:
        value = value / Q(10) ** places
        ulp = Q(1, 10**places)
    else:
        value = value * Q(10) ** (-places)
        ulp = Q(10) ** (-places)
    return value, ulp


def numer(q):
    return q.numerator


def denom(q):
    return q.denominator


def height(q):
    """Naive height: max(|numerator|, denominator) of the reduced fraction."""
    q = Q(q)
    return max(abs(int(q.numerator)), int(q.denominator))


def int_log_abs(n) -> float:
    """Natural log of |n| for a (possibly huge) integer, via bit length.

    Only the top 64 bits enter the float mantissa; the rest contributes
    through the exponent, so values with thousands of digits are fine.
    """
    n = abs(int(n))
    if n == 0:
        raise ValueError("log of zero")
    shift = max(0, n.bit_length() - _LOG_BITS)
    return math.log(n >> shift) + shift * _LN2


def rat_log_abs(q) -> float:
    """Natural log of |q| for a nonzero rational, never via float(q)."""
    q = Q(q)
    if q == 0:
        raise ValueError("log of zero")
    return int_log_abs(q.numerator) - int_log_abs(q.denominator)


def rat_to_float(q) -> float:
    """Best-effort float of a rational whose num/den may overflow float."""
    q = Q(q)
    if q == 0:
        return 0.0
    try:
        return float(q.numerator) / float(q.denominator)
    except OverflowError:
        sign = 1.0 if q > 0 else -1.0
        try:
            return sign * math.exp(rat_log_abs(q))
        except OverflowError:
            return sign * math.inf


def rat_to_decimal_str(q, digits: int = 30) -> str:
    """Exact decimal expansion of q truncated to `digits` fractional digits."""
    q = Q(q)
    sign = "-" if q < 0 else ""
    q = abs(q)
    scaled = (q.numerator * 10**digits) // q.denominator
    s = str(int(scaled)).rjust(digits + 1, "0")
    return "%s%s.%s" % (sign, s[:-digits], s[-digits:]) if digits else sign + s


def rat_to_str(q) -> str:
    """'a/b' or 'a'; round-trips through rat()."""
    q = Q(q)
    if q.denominator == 1:
        return str(int(q.numerator))
    return "%d/%d" % (int(q.numerator), int(q.denominator))
