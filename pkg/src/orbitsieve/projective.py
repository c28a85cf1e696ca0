"""Points of the projective line over Q and over prime-power residue rings.

Rational points are stored in normalized integer coordinates [x1 : x2] with
gcd(x1, x2) = 1 and the last nonzero coordinate positive, so equality is
plain tuple equality. Distances at a finite prime are kept exact as
valuation exponents rather than floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .numtheory import is_prime, valuation

__all__ = [
    "ProjectivePoint",
    "INFINITY",
    "ZERO",
    "normalize",
    "parse_point",
    "format_point",
    "ChordalValue",
    "chordal",
    "congruent_mod",
    "PrimePowerModulus",
    "parse_modulus",
    "ResiduePoint",
    "reduce_mod",
]

PointLike = Union["ProjectivePoint", int, Fraction, str, tuple]


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    """A point of P^1(Q) in normalized coprime integer coordinates."""

    x1: int
    x2: int

    def __post_init__(self):
        if self.x1 == 0 and self.x2 == 0:
            raise ValueError("(0, 0) is not a projective point")
        if math.gcd(self.x1, self.x2) != 1:
            raise ValueError("coordinates must be coprime")
        last = self.x2 if self.x2 != 0 else self.x1
        if last < 0:
            raise ValueError("last nonzero coordinate must be positive")

    @property
    def is_infinity(self) -> bool:
        return self.x2 == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinity:
            raise ValueError("the point at infinity is not a fraction")
        return Fraction(self.x1, self.x2)

    def __str__(self) -> str:
        return format_point(self)


INFINITY = ProjectivePoint(1, 0)
ZERO = ProjectivePoint(0, 1)


def normalize(value: PointLike) -> ProjectivePoint:
    """Coerce ints, Fractions, strings, or raw coordinate pairs to a point."""
    if isinstance(value, ProjectivePoint):
        return value
    if isinstance(value, int):
        return ProjectivePoint(value, 1)
    if isinstance(value, Fraction):
        return ProjectivePoint(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_point(value)
    if isinstance(value, tuple) and len(value) == 2:
        a, b = value
        if a == 0 and b == 0:
            raise ValueError("(0, 0) is not a projective point")
        g = math.gcd(a, b)
        a, b = a // g, b // g
        last = b if b != 0 else a
        if last < 0:
            a, b = -a, -b
        return ProjectivePoint(a, b)
    raise TypeError(f"cannot interpret {value!r} as a projective point")


def parse_point(text: str) -> ProjectivePoint:
    """Parse 'inf', an integer, 'a/b', or bracket form '[a:b]'."""
    s = text.strip()
    if s.lower() in ("inf", "infinity", "oo"):
        return INFINITY
    if s.startswith("[") and s.endswith("]"):
        body = s[1:-1]
        parts = body.split(":")
        if len(parts) != 2:
            raise ValueError(f"bad projective coordinates: {text!r}")
        return normalize((int(parts[0].strip()), int(parts[1].strip())))
    if "/" in s:
        num, den = s.split("/", 1)
        return normalize((int(num.strip()), int(den.strip())))
    return normalize((int(s), 1))


def format_point(pt: ProjectivePoint) -> str:
    if pt.is_infinity:
        return "inf"
    if pt.x2 == 1:
        return str(pt.x1)
    return f"{pt.x1}/{pt.x2}"


@dataclass(frozen=True)
class ChordalValue:
    """Exact chordal distance at a prime, as p^(-exponent).

    exponent None encodes distance zero (equal points); exponent 0 encodes
    distance 1, the maximum. Smaller distance = larger exponent.
    """

    p: int
    exponent: int | None

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def distance(self) -> Fraction:
        if self.exponent is None:
            return Fraction(0)
        return Fraction(1, self.p ** self.exponent)

    def at_most(self, k: int) -> bool:
        """True when the distance is <= p^-k."""
        return self.exponent is None or self.exponent >= k


def _cross(x: ProjectivePoint, y: ProjectivePoint) -> int:
    return x.x1 * y.x2 - x.x2 * y.x1


def chordal(x: PointLike, y: PointLike, p: int) -> ChordalValue:
    """Nonarchimedean chordal distance between two points at the prime p.

    On normalized coordinates this is p^(-v_p(x1*y2 - x2*y1)); the max terms
    in the usual denominator are both 1.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a = normalize(x)
    b = normalize(y)
    c = _cross(a, b)
    if c == 0:
        return ChordalValue(p, None)
    return ChordalValue(p, valuation(c, p))


def congruent_mod(x: PointLike, y: PointLike, m: "PrimePowerModulus") -> bool:
    """Whether two rational points agree modulo p^k.

    Equivalent to chordal(x, y, p).at_most(k) but avoids the valuation loop.
    """
    a = normalize(x)
    b = normalize(y)
    return _cross(a, b) % m.modulus == 0


@dataclass(frozen=True, order=True)
class PrimePowerModulus:
    """A prime power p^k used as a reduction modulus."""

    p: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("exponent must be >= 1")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def modulus(self) -> int:
        return self.p ** self.k

    def point_count(self) -> int:
        """|P^1(Z/p^k)| = p^k + p^(k-1)."""
        return self.p ** self.k + self.p ** (self.k - 1)

    def __str__(self) -> str:
        return f"{self.p}^{self.k}" if self.k > 1 else str(self.p)


def parse_modulus(text: str) -> PrimePowerModulus:
    """Parse 'p' or 'p^k'."""
    s = text.strip()
    if "^" in s:
        base, exp = s.split("^", 1)
        return PrimePowerModulus(int(base.strip()), int(exp.strip()))
    return PrimePowerModulus(int(s), 1)


@dataclass(frozen=True)
class ResiduePoint:
    """A point of P^1(Z/p^k) in canonical coordinates.

    Canonical form: c2 == 1 when the second coordinate is a unit mod p,
    otherwise c1 == 1 and p divides c2. Every point of P^1(Z/p^k) has exactly
    one such representative, so equality is field equality.
    """

    modulus: PrimePowerModulus
    c1: int
    c2: int

    def __post_init__(self):
        m = self.modulus.modulus
        if not (0 <= self.c1 < m and 0 <= self.c2 < m):
            raise ValueError("coordinates out of range")
        if self.c2 == 1:
            return
        if self.c1 == 1 and self.c2 % self.modulus.p == 0:
            return
        raise ValueError("residue point not in canonical form")

    @classmethod
    def make(cls, modulus: PrimePowerModulus, a: int, b: int) -> "ResiduePoint":
        """Canonicalize arbitrary coordinates (a, b), not both divisible by p."""
        m = modulus.modulus
        a %= m
        b %= m
        if b % modulus.p != 0:
            inv = pow(b, -1, m)
            return cls(modulus, a * inv % m, 1)
        if a % modulus.p != 0:
            inv = pow(a, -1, m)
            return cls(modulus, 1, b * inv % m)
        raise ValueError("both coordinates divisible by p: not a point mod p^k")

    def __str__(self) -> str:
        return f"({self.c1} : {self.c2}) mod {self.modulus}"


def reduce_mod(x: PointLike, m: PrimePowerModulus) -> ResiduePoint:
    """Reduce a rational point modulo p^k.

    Well-defined for every rational point: normalized coordinates are coprime,
    so at least one survives as a unit mod p.
    """
    pt = normalize(x)
    return ResiduePoint.make(m, pt.x1, pt.x2)
