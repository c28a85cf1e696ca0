"""Forward orbits over Q and over residue rings, and modular hit sets.

A modular orbit is always eventually periodic (the ring is finite), so the
set of indices n with phi^n(start) == target mod p^k decomposes into a
finite exceptional set below the tail length plus a union of residue
classes modulo the cycle length. HitSet captures exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .numtheory import ResidueClassSet
from .projective import PointLike, PrimePowerModulus, ProjectivePoint, ResiduePoint, normalize, reduce_mod
from .ratmap import DEFAULT_HEIGHT_BITS, RationalMap

__all__ = [
    "OrbitSummary",
    "ModOrbit",
    "HitSet",
    "orbit_rational",
    "orbit_mod",
    "hit_set",
]


@dataclass(frozen=True)
class OrbitSummary:
    """Prefix of a rational forward orbit.

    status is "preperiodic" (a repeat was found: points has length
    tail + cycle + 1 and points[tail + cycle] == points[tail]) or
    "truncated" (no repeat within the step/height budget; steps_done
    evaluations were performed).
    """

    start: ProjectivePoint
    points: tuple[ProjectivePoint, ...]
    status: str
    tail: Optional[int] = None
    cycle: Optional[int] = None
    steps_done: int = 0

    @property
    def is_preperiodic(self) -> bool:
        return self.status == "preperiodic"

    def cycle_points(self) -> tuple[ProjectivePoint, ...]:
        if not self.is_preperiodic:
            raise ValueError("orbit was not closed")
        return self.points[self.tail : self.tail + self.cycle]

    def distinct_points(self) -> tuple[ProjectivePoint, ...]:
        if not self.is_preperiodic:
            raise ValueError("orbit was not closed")
        return self.points[: self.tail + self.cycle]


def orbit_rational(
    phi: RationalMap,
    start: PointLike,
    max_steps: int,
    height_bits: int = DEFAULT_HEIGHT_BITS,
) -> OrbitSummary:
    """Iterate until the orbit closes or a budget is hit. Never raises
    on budget exhaustion; that outcome is the "truncated" status.
    """
    pt = normalize(start)
    points = [pt]
    seen = {pt: 0}
    for _ in range(max_steps):
        nxt = phi.evaluate(points[-1])
        if max(abs(nxt.x1).bit_length(), abs(nxt.x2).bit_length()) > height_bits:
            return OrbitSummary(
                pt, tuple(points), "truncated", steps_done=len(points) - 1
            )
        if nxt in seen:
            tail = seen[nxt]
            cycle = len(points) - tail
            points.append(nxt)
            return OrbitSummary(
                pt, tuple(points), "preperiodic", tail, cycle, len(points) - 1
            )
        seen[nxt] = len(points)
        points.append(nxt)
    return OrbitSummary(pt, tuple(points), "truncated", steps_done=len(points) - 1)


@dataclass(frozen=True)
class ModOrbit:
    """The full eventual-period decomposition of an orbit mod p^k.

    sequence lists the distinct residue points phi^0, ..., phi^(tail+cycle-1);
    every later iterate repeats with period `cycle`. The length is bounded by
    |P^1(Z/p^k)| = p^k + p^(k-1).
    """

    modulus: PrimePowerModulus
    tail: int
    cycle: int
    sequence: tuple[ResiduePoint, ...]

    def point_at(self, n: int) -> ResiduePoint:
        """phi^n(start) mod p^k for any n >= 0."""
        if n < len(self.sequence):
            return self.sequence[n]
        return self.sequence[self.tail + (n - self.tail) % self.cycle]


def orbit_mod(phi: RationalMap, start: PointLike, m: PrimePowerModulus) -> ModOrbit:
    """Reduce the start point and iterate mod p^k until the first repeat.

    Raises BadPrimeError (from the reduction step) at primes dividing the
    resultant, where reduction and iteration do not commute.
    """
    cur = reduce_mod(normalize(start), m)
    seq = [cur]
    seen = {cur: 0}
    while True:
        cur = phi.evaluate_mod(cur)
        if cur in seen:
            tail = seen[cur]
            cycle = len(seq) - tail
            return ModOrbit(m, tail, cycle, tuple(seq))
        seen[cur] = len(seq)
        seq.append(cur)


@dataclass(frozen=True)
class HitSet:
    """Indices n with phi^n(start) in the reduced target set, mod p^k.

    Exact description: n is a hit iff (n < threshold and n in exceptional)
    or (n >= threshold and n mod cycle_length in residues).
    """

    threshold: int
    exceptional: frozenset[int]
    cycle_length: int
    residues: ResidueClassSet

    def __post_init__(self):
        if self.residues.modulus != self.cycle_length:
            raise ValueError("residue classes must live modulo the cycle length")
        for n in self.exceptional:
            if not 0 <= n < self.threshold:
                raise ValueError("exceptional indices must lie below the threshold")

    def contains(self, n: int) -> bool:
        if n < 0:
            raise ValueError("orbit indices are nonnegative")
        if n < self.threshold:
            return n in self.exceptional
        return n in self.residues

    def is_empty(self) -> bool:
        return not self.exceptional and self.residues.is_empty()


def hit_set(orb: ModOrbit, targets: Iterable[PointLike]) -> HitSet:
    """Compute the hit set of a modular orbit against a set of targets."""
    reduced = {reduce_mod(normalize(t), orb.modulus) for t in targets}
    hits = [n for n, rp in enumerate(orb.sequence) if rp in reduced]
    exceptional = frozenset(n for n in hits if n < orb.tail)
    in_cycle = sorted({n % orb.cycle for n in hits if n >= orb.tail})
    return HitSet(
        threshold=orb.tail,
        exceptional=exceptional,
        cycle_length=orb.cycle,
        residues=ResidueClassSet(orb.cycle, tuple(in_cycle)),
    )
