"""Arbitrary-precision integer and elementary number theory primitives.

Everything here is deterministic: the Miller-Rabin witness schedule is fixed,
Pollard-Brent rho runs a fixed parameter sequence under a step budget, and no
global state is consulted. All functions operate on Python's native big ints.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

__all__ = [
    "FactorizationBudgetError",
    "Factorization",
    "ResidueClassSet",
    "is_prime",
    "primality_confidence",
    "next_prime",
    "good_primes",
    "valuation",
    "factorial_valuation",
    "mobius",
    "crt_pair",
    "factorize",
    "DEFAULT_RHO_STEPS",
    "DEFAULT_TRIAL_BOUND",
]

# Largest bound for which the fixed witness tuple below is known to make
# Miller-Rabin deterministic (first 13 primes, Sorenson-Webster).
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_EXTRA_ROUNDS = 40

_SMALL_SIEVE_LIMIT = 10_000
_small_primes: list[int] = []

DEFAULT_RHO_STEPS = 500_000
DEFAULT_TRIAL_BOUND = 10 ** 6


def _sieve_small_primes() -> list[int]:
    global _small_primes
    if not _small_primes:
        flags = bytearray([1]) * _SMALL_SIEVE_LIMIT
        flags[0] = flags[1] = 0
        for i in range(2, math.isqrt(_SMALL_SIEVE_LIMIT) + 1):
            if flags[i]:
                flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
        _small_primes = [i for i in range(_SMALL_SIEVE_LIMIT) if flags[i]]
    return _small_primes


class FactorizationBudgetError(RuntimeError):
    """Factoring budget ran out; carries the unfactored composite cofactor."""

    def __init__(self, cofactor: int, partial: Iterable[tuple[int, int]]):
        self.cofactor = cofactor
        self.partial = tuple(partial)
        super().__init__(
            "factorization budget exhausted with composite cofactor of "
            f"{cofactor.bit_length()} bits"
        )


def _miller_rabin_round(n: int, a: int, d: int, s: int) -> bool:
    """One MR round; True means 'n passes for witness a'."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test, deterministic below ~3.3e24.

    Above that bound the answer is probabilistic (40 extra rounds with bases
    drawn from a PRNG seeded by n, so repeated calls agree); see
    primality_confidence().
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        if not _miller_rabin_round(n, a, d, s):
            return False
    if n < _MR_DETERMINISTIC_BOUND:
        return True
    rng = random.Random(n)
    for _ in range(_MR_EXTRA_ROUNDS):
        a = rng.randrange(2, n - 1)
        if not _miller_rabin_round(n, a, d, s):
            return False
    return True


def primality_confidence(n: int) -> str:
    """'deterministic' or 'probabilistic' for what is_prime(n) reports."""
    return "deterministic" if n < _MR_DETERMINISTIC_BOUND else "probabilistic"


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    c = max(n + 1, 2)
    if c > 2 and c % 2 == 0:
        c += 1
    while not is_prime(c):
        c += 1 if c == 2 else 2
    return c


def good_primes(excluded: Iterable[int] = (), start_after: int = 0) -> Iterator[int]:
    """Yield primes > start_after in increasing order, skipping `excluded`."""
    banned = frozenset(excluded)
    p = start_after
    while True:
        p = next_prime(p)
        if p not in banned:
            yield p


def valuation(n: int, p: int) -> int:
    """Exact power of the prime p dividing n (n must be nonzero)."""
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    if p < 2 or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def factorial_valuation(n: int, p: int) -> int:
    """v_p(n!) by Legendre's sum of floor(n / p^i); n! is never formed."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if p < 2 or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def mobius(n: int) -> int:
    """Moebius function: 0 on squareful n, else (-1)^(number of prime factors)."""
    if n < 1:
        raise ValueError("mobius is defined for positive integers")
    if n == 1:
        return 1
    fac = factorize(n)
    for _, e in fac.factors:
        if e > 1:
            return 0
    return -1 if len(fac.factors) % 2 else 1


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> Optional[tuple[int, int]]:
    """Combine the congruences x = r1 (mod m1), x = r2 (mod m2).

    Moduli need not be coprime. Returns (r, lcm(m1, m2)) with 0 <= r < lcm,
    or None when the pair is incompatible.
    """
    if m1 < 1 or m2 < 1:
        raise ValueError("moduli must be positive")
    g = math.gcd(m1, m2)
    if (r2 - r1) % g != 0:
        return None
    l = m1 // g * m2
    t = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 != g else 0
    return (r1 + m1 * t) % l, l


@dataclass(frozen=True)
class Factorization:
    """A verified factorization: value == product of p^e over factors.

    `factors` is a tuple of (prime, exponent) pairs with strictly increasing
    primes and positive exponents.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError("factors must be increasing primes with e >= 1")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            last = p
            prod *= p ** e
        if prod != self.value:
            raise ValueError("factors do not multiply back to value")

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def divisors(self) -> list[int]:
        """All positive divisors, sorted increasing."""
        divs = [1]
        for p, e in self.factors:
            divs = [d * p ** i for d in divs for i in range(e + 1)]
        return sorted(divs)


@dataclass(frozen=True)
class ResidueClassSet:
    """A set of residue classes modulo a fixed positive modulus."""

    modulus: int
    residues: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        last = -1
        for r in self.residues:
            if not 0 <= r < self.modulus:
                raise ValueError(f"residue {r} out of range mod {self.modulus}")
            if r <= last:
                raise ValueError("residues must be strictly increasing")
            last = r

    def __contains__(self, n: int) -> bool:
        return n % self.modulus in set(self.residues)

    def __len__(self) -> int:
        return len(self.residues)

    def is_empty(self) -> bool:
        return not self.residues


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0, exact integer bisection."""
    if n < 2 or k == 1:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid
    return lo


def _perfect_power(n: int) -> Optional[tuple[int, int]]:
    """(base, exponent >= 2) if n is a perfect power, else None."""
    for e in range(2, n.bit_length() + 1):
        r = _iroot(n, e)
        if r ** e == n:
            return r, e
        if r < 2:
            break
    return None


def _pollard_brent(n: int, budget: int) -> tuple[Optional[int], int]:
    """Brent-cycle rho with a fixed (c, m) schedule.

    Returns (nontrivial factor or None, steps consumed). Deterministic: the
    polynomial constant c walks 1, 2, 3, ... and the starting value is 2.
    """
    if n % 2 == 0:
        return 2, 0
    steps = 0
    m = 128
    for c in range(1, 10_000):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                chunk = min(m, r - k)
                for _ in range(chunk):
                    y = (y * y + c) % n
                    q = q * (x - y) % n
                k += chunk
                steps += chunk
                g = math.gcd(q, n)
                if steps >= budget and g == 1:
                    return None, steps
            r <<= 1
        if g == n:
            # backtrack one step at a time to recover the factor
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                steps += 1
                g = math.gcd(abs(x - ys), n)
                if steps >= budget and g == 1:
                    return None, steps
        if 1 < g < n:
            return g, steps
        if steps >= budget:
            return None, steps
        # g == n even after backtracking: retry with the next constant
    return None, steps


def _trial_range(n: int, lo: int, hi: int) -> tuple[int, dict[int, int]]:
    """Divide out all prime factors of n lying in (lo, hi] by odd trial steps."""
    found: dict[int, int] = {}
    d = lo + 1
    if d % 2 == 0:
        d += 1
    while d * d <= n and d <= hi:
        while n % d == 0:
            found[d] = found.get(d, 0) + 1
            n //= d
        d += 2
    return n, found


def factorize(
    n: int,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_steps: int = DEFAULT_RHO_STEPS,
) -> Factorization:
    """Fully factor a positive integer, deterministically.

    Strategy: trial division by sieved primes < 10^4, then Pollard-Brent rho
    under `rho_steps` total budget (perfect powers peeled first), then a
    last-resort trial sweep up to `trial_bound`. Inputs whose prime factors
    all lie below `trial_bound` always succeed. Raises
    FactorizationBudgetError carrying the composite cofactor otherwise.
    """
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    if n == 1:
        return Factorization(1, ())
    found: dict[int, int] = {}
    m = n
    for p in _sieve_small_primes():
        if p * p > m:
            break
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    budget = rho_steps
    stack = [m] if m > 1 else []
    stuck: list[int] = []
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if is_prime(v):
            found[v] = found.get(v, 0) + 1
            continue
        power = _perfect_power(v)
        if power is not None:
            base, exp = power
            stack.extend([base] * exp)
            continue
        g, used = _pollard_brent(v, budget)
        budget -= used
        if g is None:
            leftover, extra = _trial_range(v, _SMALL_SIEVE_LIMIT, trial_bound)
            for p, e in extra.items():
                found[p] = found.get(p, 0) + e
            if leftover == 1:
                continue
            if is_prime(leftover):
                found[leftover] = found.get(leftover, 0) + 1
                continue
            stuck.append(leftover)
        else:
            stack.append(g)
            stack.append(v // g)
    if stuck:
        cofactor = math.prod(stuck)
        raise FactorizationBudgetError(
            cofactor, tuple(sorted(found.items()))
        )
    return Factorization(n, tuple(sorted(found.items())))
