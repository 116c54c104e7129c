"""Exact rational ground type.

Uses gmpy2.mpq when available (much faster in the row-reduction inner
loops), falling back to fractions.Fraction.  Both types print as "p/q"
or "p" and expose .numerator/.denominator, which is all the rest of the
package relies on.
"""

from .errors import ParseError

try:
    from gmpy2 import mpq as RAT
except ImportError:  # pragma: no cover
    from fractions import Fraction as RAT

RAT_ZERO = RAT(0)
RAT_ONE = RAT(1)


def rat(p, q=1):
    return RAT(p, q)


def rat_str(r):
    """Canonical form "p" or "p/q" with q > 0."""
    return str(r)


def rat_from_str(text):
    text = text.strip()
    try:
        if "/" in text:
            p, q = text.split("/")
            den = int(q)
            if den == 0:
                raise ZeroDivisionError
            return RAT(int(p), den)
        return RAT(int(text))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"invalid rational literal: {text!r}")
