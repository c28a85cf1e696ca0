"""Primitive prime divisors along an orbit approaching a target point.

For each index m the quantity factored is the cross term
|x1*g2 - x2*g1| of phi^m(beta) against gamma in normalized coordinates,
which is the numerator of the chordal distances: a prime p divides it
exactly when phi^m(beta) and gamma collide mod p. A prime in the support at
index m is primitive when it divides no earlier term.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .numtheory import factorize, DEFAULT_RHO_STEPS, DEFAULT_TRIAL_BOUND
from .orbit import orbit_rational
from .projective import PointLike, normalize
from .ratmap import (
    DEFAULT_HEIGHT_BITS,
    RationalMap,
    is_polynomial_type,
    iterate_point,
)

__all__ = [
    "SupportReport",
    "PrimitiveDivisorRun",
    "difference_support",
    "primitive_divisors",
]

_PREPERIODIC_SCAN_STEPS = 64


@dataclass(frozen=True)
class SupportReport:
    """Factored support of the term at one orbit index."""

    m: int
    term_bits: int
    term_valuations: tuple[tuple[int, int], ...]
    primitive: frozenset[int]


@dataclass(frozen=True)
class PrimitiveDivisorRun:
    """Reports for m = 1..m_max plus any applicability warnings."""

    reports: tuple[SupportReport, ...]
    warnings: tuple[str, ...]


def difference_support(
    phi: RationalMap,
    beta: PointLike,
    gamma: PointLike,
    m: int,
    height_bits: int = DEFAULT_HEIGHT_BITS,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_steps: int = DEFAULT_RHO_STEPS,
) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Cross term of phi^m(beta) against gamma and its full factorization.

    Returns (term, ((p, e), ...)). Raises ValueError when the orbit lands
    exactly on gamma (the difference is zero and has no support), and lets
    factoring or height budget errors propagate.
    """
    b = normalize(beta)
    g = normalize(gamma)
    x = iterate_point(phi, b, m, height_bits)
    term = abs(x.x1 * g.x2 - x.x2 * g.x1)
    if term == 0:
        raise ValueError(
            f"phi^{m}(beta) equals gamma exactly; the difference term vanishes"
        )
    if term == 1:
        return 1, ()
    fac = factorize(term, trial_bound, rho_steps)
    return term, fac.factors


def primitive_divisors(
    phi: RationalMap,
    beta: PointLike,
    gamma: PointLike,
    m_max: int,
    excluded: Iterable[int] = (),
    height_bits: int = DEFAULT_HEIGHT_BITS,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_steps: int = DEFAULT_RHO_STEPS,
) -> PrimitiveDivisorRun:
    """Support and primitive-prime reports for m = 1..m_max.

    Excluded primes are dropped from every support before anything else, so
    they can be neither support nor primitive. Warnings flag the situations
    where the eventual-primitivity guarantee does not apply (gamma not
    preperiodic as far as a bounded scan can tell, map of polynomial type at
    gamma, or beta itself preperiodic); reports are still produced.
    """
    banned = frozenset(excluded)
    b = normalize(beta)
    g = normalize(gamma)
    warnings: list[str] = []
    gamma_scan = orbit_rational(phi, g, _PREPERIODIC_SCAN_STEPS, height_bits)
    if not gamma_scan.is_preperiodic:
        warnings.append(
            "gamma was not seen to be preperiodic within "
            f"{_PREPERIODIC_SCAN_STEPS} steps; the primitive-divisor "
            "guarantee does not apply"
        )
    if is_polynomial_type(phi, g) is not None:
        warnings.append(
            "the map is of polynomial type at gamma; primitive divisors may "
            "fail to appear for all large m"
        )
    beta_scan = orbit_rational(
        phi, b, max(2 * m_max, _PREPERIODIC_SCAN_STEPS), height_bits
    )
    if beta_scan.is_preperiodic:
        warnings.append(
            "beta is preperiodic, so the terms cycle instead of growing"
        )
    seen: set[int] = set()
    reports: list[SupportReport] = []
    for m in range(1, m_max + 1):
        term, factors = difference_support(
            phi, b, g, m, height_bits, trial_bound, rho_steps
        )
        kept = tuple((p, e) for p, e in factors if p not in banned)
        support = {p for p, _ in kept}
        primitive = frozenset(support - seen)
        seen.update(support)
        reports.append(
            SupportReport(m, term.bit_length(), kept, primitive)
        )
    return PrimitiveDivisorRun(tuple(reports), tuple(warnings))
