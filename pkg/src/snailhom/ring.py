"""Euclidean coefficient rings: the integers, the rationals and prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

INTEGERS = "Z"
RATIONALS = "Q"
PRIME_FIELD = "Fp"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Ring:
    """A computable Euclidean domain.

    Elements are plain Python objects: ``int`` for the integers and for
    ``F_p`` (kept in ``[0, p)``), ``Fraction`` for the rationals.
    """

    tag: str
    p: int = 0

    def __post_init__(self):
        if self.tag not in (INTEGERS, RATIONALS, PRIME_FIELD):
            raise ValueError(f"unknown ring tag {self.tag!r}")
        if self.tag == PRIME_FIELD and not _is_prime(self.p):
            raise ValueError(f"F_p needs a prime, got {self.p}")
        if self.tag != PRIME_FIELD and self.p != 0:
            raise ValueError("only prime fields carry a characteristic")

    @property
    def is_field(self) -> bool:
        return self.tag != INTEGERS

    @property
    def zero(self):
        return Fraction(0) if self.tag == RATIONALS else 0

    @property
    def one(self):
        return Fraction(1) if self.tag == RATIONALS else 1

    def __call__(self, x):
        """Coerce ``x`` into canonical form."""
        if self.tag == INTEGERS:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return int(x.numerator)
            if isinstance(x, bool) or not isinstance(x, int):
                raise TypeError(f"cannot coerce {x!r} to Z")
            return x
        if self.tag == RATIONALS:
            if isinstance(x, str):
                return Fraction(x)
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def reduce(self, x):
        # arithmetic results are already canonical except modulo p
        if self.tag == PRIME_FIELD:
            return x % self.p
        return x

    def is_unit(self, x) -> bool:
        if self.tag == INTEGERS:
            return x == 1 or x == -1
        return x != 0

    def inv(self, x):
        if not self.is_unit(x):
            raise ZeroDivisionError(f"{x} is not a unit")
        if self.tag == INTEGERS:
            return x
        if self.tag == RATIONALS:
            return 1 / x
        return pow(x, -1, self.p)

    def size(self, x) -> int:
        """Euclidean norm used for pivot selection."""
        if self.tag == INTEGERS:
            return abs(x)
        return 0 if x == 0 else 1

    def quo(self, a, b):
        """Euclidean quotient: ``a - quo(a, b) * b`` has smaller size than ``b``."""
        if self.tag == INTEGERS:
            q, r = divmod(a, b)
            # symmetric remainder keeps entries small; r has the sign of b
            if 2 * abs(r) > abs(b):
                q += 1
            return q
        return self.reduce(a * self.inv(b))

    def divides(self, a, b) -> bool:
        """Does ``a`` divide ``b``?"""
        if a == 0:
            return b == 0
        if self.tag == INTEGERS:
            return b % a == 0
        return True

    def normal_unit(self, x):
        """The unit ``u`` such that ``u * x`` is the canonical associate."""
        if x == 0:
            return self.one
        if self.tag == INTEGERS:
            return -1 if x < 0 else 1
        return self.inv(x)

    def parse(self, text):
        if isinstance(text, str):
            return self(Fraction(text)) if self.tag != INTEGERS else self(int(text))
        return self(text)

    def format(self, x) -> str:
        if self.tag == RATIONALS and x.denominator != 1:
            return f"{x.numerator}/{x.denominator}"
        if self.tag == RATIONALS:
            return str(x.numerator)
        return str(x)

    def name(self) -> str:
        if self.tag == PRIME_FIELD:
            return f"F{self.p}"
        return self.tag

    def __str__(self):
        return self.name()


ZZ = Ring(INTEGERS)
QQ = Ring(RATIONALS)


def GF(p: int) -> Ring:
    return Ring(PRIME_FIELD, p)
