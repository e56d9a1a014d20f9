"""
Exact scalar rings: the rationals, the integers and prime fields.

Scalars are plain Python numbers; a ring object knows how to coerce,
normalise, invert, parse and print them.  Rationals are stored as
``fractions.Fraction`` (always in lowest terms with positive denominator),
except that integral rationals are collapsed to ``int`` which is much
faster and compares equal.  Prime field elements are ints in ``[0, p)``.
"""

import re
from fractions import Fraction

from frobspace.errors import NotPrime, ParseError


SCALAR = re.compile(r"[+-]?\d+(/\d+)?")


def is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Ring:
    name = "?"
    is_field = False
    zero = 0
    one = 1

    def __call__(self, x):
        raise NotImplementedError

    def reduce(self, x):
        """Normalise the result of native +, -, * on two ring elements."""
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def parse(self, s):
        if not isinstance(s, (str, int)) or isinstance(s, bool):
            raise ParseError("scalar must be a string, got %r" % (s,))
        text = str(s).strip()
        if not SCALAR.fullmatch(text):
            raise ParseError("bad scalar %r: expected an integer or a/b" % (s,))
        try:
            return self(Fraction(text))
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError("bad scalar %r: %s" % (s, e)) from None

    def format(self, x):
        return str(x)

    def to_json(self):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return type(self) is type(other) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(repr(self))


class RationalField(Ring):
    name = "QQ"
    is_field = True

    def __call__(self, x):
        if isinstance(x, int):
            return x
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x

    def reduce(self, x):
        if type(x) is int:
            return x
        return x.numerator if x.denominator == 1 else x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.reduce(Fraction(1) / x)

    def to_json(self):
        return "Q"


class IntegerRing(Ring):
    name = "ZZ"

    def __call__(self, x):
        if isinstance(x, int):
            return x
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError("%s is not an integer" % x)
        return x.numerator

    def reduce(self, x):
        return x

    def inv(self, x):
        if x in (1, -1):
            return x
        raise ZeroDivisionError("%s is not a unit in ZZ" % x)

    def to_json(self):
        return "Z"


class PrimeField(Ring):
    is_field = True

    def __init__(self, p):
        if not isinstance(p, int) or not is_prime(p):
            raise NotPrime("%r is not prime" % (p,))
        self.p = p
        self.name = "GF(%d)" % p

    def __call__(self, x):
        if isinstance(x, int):
            return x % self.p
        x = Fraction(x)
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def reduce(self, x):
        return x % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def to_json(self):
        return {"Fp": self.p}


QQ = RationalField()
ZZ = IntegerRing()
_fields = {}


def GF(p):
    if p not in _fields:
        _fields[p] = PrimeField(p)
    return _fields[p]


def ring_from_json(obj):
    if obj == "Q":
        return QQ
    if obj == "Z":
        return ZZ
    if isinstance(obj, dict) and set(obj) == {"Fp"}:
        p = obj["Fp"]
        if isinstance(p, str) and p.strip().isdigit():
            p = int(p)
        if not isinstance(p, int) or isinstance(p, bool):
            raise ParseError("Fp modulus must be an integer, got %r" % (p,))
        return GF(p)
    raise ParseError("unknown scalars descriptor %r" % (obj,))
