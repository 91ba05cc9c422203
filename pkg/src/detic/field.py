"""Exact scalar fields: the rationals and prime fields F_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2

MAX_MODULUS = 2**61


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class Field:
    """A field description.

    ``p is None`` means the rationals; otherwise the prime field of order
    ``p``.  Prime-field elements are plain ints in ``[0, p)``, rational
    elements are :class:`fractions.Fraction`.
    """

    p: int | None = None

    def __post_init__(self):
        if self.p is None:
            return
        if not isinstance(self.p, int) or self.p < 2:
            raise FieldError(f"modulus must be an integer >= 2, got {self.p!r}")
        if self.p >= MAX_MODULUS:
            raise FieldError(f"modulus {self.p} exceeds 2**61")
        if not gmpy2.is_prime(self.p):
            raise FieldError(f"modulus {self.p} is not prime")

    @classmethod
    def rational(cls) -> Field:
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> Field:
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def __call__(self, x):
        """Coerce an int, Fraction or ``"a/b"`` string into the field."""
        if self.p is None:
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, bool) or not isinstance(x, int):
            x = int(x)
        return x % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def random(self, rng, bound: int = 2**16):
        """Uniform element for F_p; for the rationals, a uniform integer in
        ``[-bound, bound]``."""
        if self.p is None:
            return Fraction(int(rng.integers(-bound, bound + 1)))
        return int(rng.integers(0, self.p))

    def to_json(self) -> dict:
        if self.p is None:
            return {"type": "rational"}
        return {"type": "prime", "p": self.p}

    @classmethod
    def from_json(cls, obj: dict) -> Field:
        kind = obj.get("type")
        if kind == "rational":
            return cls(None)
        if kind == "prime":
            return cls(int(obj["p"]))
        raise FieldError(f"unknown field type {kind!r}")

    def __str__(self):
        return "Q" if self.p is None else f"F{self.p}"


QQ = Field(None)
