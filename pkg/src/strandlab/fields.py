"""Exact coefficient fields: prime fields GF(p) and the rationals.

Elements are plain Python objects (ints reduced mod p, or Fraction), so the
Field object only supplies the arithmetic.  The default field for the whole
package is GF(32003); set STRANDLAB_FIELD=rationals or STRANDLAB_FIELD=p
to override in the CLI.
"""

from __future__ import annotations

from fractions import Fraction


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """A coefficient field: either GF(p) or QQ."""

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    # -- element constructors -------------------------------------------
    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def of(self, x) -> object:
        """Coerce an int or Fraction into the field."""
        if self.p is not None:
            if isinstance(x, Fraction):
                return self.mul(x.numerator % self.p, self.inv(x.denominator % self.p))
            return x % self.p
        return Fraction(x)

    # -- arithmetic ------------------------------------------------------
    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a):
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p is not None:
            return pow(a, self.p - 2, self.p)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # --------------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field(None)
DEFAULT_PRIME = 32003


def parse_field(text: str) -> Field:
    """Parse a field description: 'rationals', 'QQ', or a prime number."""
    t = text.strip().lower()
    if t in ("rationals", "qq", "q"):
        return QQ
    try:
        p = int(t)
    except ValueError:
        raise ValueError(f"cannot parse field {text!r}") from None
    return Field(p)


def default_field() -> Field:
    return Field(DEFAULT_PRIME)
