"""
Exact scalar fields: the rationals and prime fields of odd characteristic.

Scalars are plain python objects (``fractions.Fraction`` or :class:`Fp`)
so they drop straight into numpy object arrays.
"""

from __future__ import annotations

import math
import numbers
import random
from fractions import Fraction


class FieldError(ValueError):
    pass


class FieldMismatch(FieldError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, math.isqrt(p) + 1):
        if p % q == 0:
            return False
    return True


_SCALARS = (int, Fraction, numbers.Integral)


class Fp:
    """Residue class modulo an odd prime."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.p = p
        self.v = int(v) % p

    def _other(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise FieldMismatch("mixing F_%d and F_%d" % (self.p, x.p))
            return x.v
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def __add__(self, x):
        if not isinstance(x, (Fp,) + _SCALARS):
            return NotImplemented
        return Fp(self.v + self._other(x), self.p)

    __radd__ = __add__

    def __sub__(self, x):
        if not isinstance(x, (Fp,) + _SCALARS):
            return NotImplemented
        return Fp(self.v - self._other(x), self.p)

    def __rsub__(self, x):
        if not isinstance(x, (Fp,) + _SCALARS):
            return NotImplemented
        return Fp(self._other(x) - self.v, self.p)

    def __mul__(self, x):
        if not isinstance(x, (Fp,) + _SCALARS):
            return NotImplemented
        return Fp(self.v * self._other(x), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, x):
        if not isinstance(x, (Fp,) + _SCALARS):
            return NotImplemented
        return self * Fp(self._other(x), self.p).inverse()

    def __rtruediv__(self, x):
        return Fp(self._other(x), self.p) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.v, e, self.p), self.p)

    def __eq__(self, x):
        if isinstance(x, (Fp, int, Fraction)):
            try:
                return self.v == self._other(x)
            except (FieldMismatch, ValueError):
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "Fp(%d, %d)" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


class Field:
    """Base class. Subclasses provide ``__call__`` (coercion)."""

    char = 0
    name = "?"

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def random(self, rng: random.Random, lo=-3, hi=3):
        return self(rng.randint(lo, hi))

    def __eq__(self, other):
        return type(self) is type(other) and self.char == other.char

    def __hash__(self):
        return hash((type(self).__name__, self.char))

    def __repr__(self):
        return self.name


class Rationals(Field):
    name = "Q"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, Fp):
            raise FieldMismatch("cannot coerce a prime-field element into Q")
        return Fraction(x)

    def is_square(self, x) -> bool:
        return self.sqrt(x) is not None

    def sqrt(self, x):
        x = Fraction(x)
        if x < 0:
            return None
        a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if a * a == x.numerator and b * b == x.denominator:
            return Fraction(a, b)
        return None

    def to_str(self, x) -> str:
        return str(Fraction(x))


class PrimeField(Field):
    def __init__(self, p: int):
        if p == 2:
            raise FieldError("characteristic 2 is not supported")
        if not _is_prime(p) or p > 2**31:
            raise FieldError("need an odd prime p <= 2^31, got %r" % (p,))
        self.char = p
        self.name = "F%d" % p

    def __call__(self, x):
        if isinstance(x, Fp):
            if x.p != self.char:
                raise FieldMismatch("F_%d element in F_%d" % (x.p, self.char))
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return Fp(x.numerator, self.char) / Fp(x.denominator, self.char)
        return Fp(x, self.char)

    def is_square(self, x) -> bool:
        return self.sqrt(x) is not None

    def sqrt(self, x):
        x = self(x)
        if x.v == 0:
            return x
        p = self.char
        if pow(x.v, (p - 1) // 2, p) != 1:
            return None
        # small fields: brute force is fine; otherwise Tonelli-Shanks
        if p < 5000:
            for r in range(p):
                if r * r % p == x.v:
                    return Fp(r, p)
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(x.v, q, p), pow(x.v, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
        return Fp(r, p)

    def to_str(self, x) -> str:
        return str(self(x).v)


QQ = Rationals()


def parse_field(name: str | None) -> Field:
    """``"q"`` (default) or ``"pNN"`` for the prime field F_NN."""
    if name is None or name.lower() in ("q", "qq", "rational"):
        return QQ
    s = name.lower()
    if s.startswith("p") and s[1:].isdigit():
        return PrimeField(int(s[1:]))
    raise FieldError("unknown field %r (use 'q' or 'pNN')" % (name,))


def field_of(x) -> Field:
    if isinstance(x, Fp):
        return PrimeField(x.p)
    return QQ
