"""Rational self-maps of the projective line in exact integer arithmetic.

A degree-d map is stored as a pair of degree-d homogeneous integer forms
(F, G) with nonzero resultant, jointly primitive, the highest nonzero
coefficient of F positive. Coefficient vectors are ascending in the first
variable: index i holds the coefficient of X^i Y^(d-i).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .numtheory import (
    FactorizationBudgetError,
    factorize,
    mobius,
    DEFAULT_RHO_STEPS,
    DEFAULT_TRIAL_BOUND,
)
from .projective import (
    INFINITY,
    PointLike,
    PrimePowerModulus,
    ProjectivePoint,
    ResiduePoint,
    ZERO,
    normalize,
)

__all__ = [
    "DegenerateMapError",
    "BadPrimeError",
    "HeightBudgetError",
    "DynatomicDivisionError",
    "BinaryForm",
    "BadPrimeReport",
    "RationalMap",
    "resultant",
    "parse_map",
    "parse_polynomial",
    "newton_map",
    "iterate_point",
    "is_polynomial_type",
    "DynatomicForm",
    "dynatomic",
    "dynatomic_degree",
    "rational_periodic_points",
    "DEFAULT_HEIGHT_BITS",
    "DEFAULT_COMPOSE_DEGREE",
]

DEFAULT_HEIGHT_BITS = 1 << 20
DEFAULT_COMPOSE_DEGREE = 8192


class DegenerateMapError(ValueError):
    """The form pair has resultant zero (a common factor was not cancelled)."""


class BadPrimeError(ValueError):
    """Reduction was requested at a prime dividing the resultant."""

    def __init__(self, p: int):
        self.p = p
        super().__init__(f"{p} is a prime of bad reduction for this map")


class HeightBudgetError(RuntimeError):
    """Orbit coordinates outgrew the bit budget; carries the last safe index."""

    def __init__(self, last_index: int, bits: int):
        self.last_index = last_index
        self.bits = bits
        super().__init__(
            f"coordinate size exceeded {bits} bits after iterate {last_index}"
        )


class DynatomicDivisionError(ArithmeticError):
    """The Moebius-product division left a nonzero remainder."""


# ---------------------------------------------------------------------------
# small dense polynomial helpers (ascending coefficient lists)

def _ptrim(v: list) -> list:
    while v and v[-1] == 0:
        v.pop()
    return v


def _padd(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _ptrim(out)


def _pneg(a: Sequence) -> list:
    return [-c for c in a]


def _pmul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _ptrim(out)


def _ppow(a: Sequence, k: int) -> list:
    out = [1]
    base = list(a)
    while k:
        if k & 1:
            out = _pmul(out, base)
        k >>= 1
        if k:
            base = _pmul(base, base)
    return out


def _pderiv(a: Sequence) -> list:
    return _ptrim([i * a[i] for i in range(1, len(a))])


def _poly_divmod(num: Sequence, den: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    """Exact-rational division of ascending coefficient lists."""
    den = _ptrim([Fraction(c) for c in den])
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in num]
    _ptrim(rem)
    dn = len(den) - 1
    lead = den[-1]
    q: list[Fraction] = [Fraction(0)] * max(len(rem) - dn, 0)
    while len(rem) - 1 >= dn and rem:
        shift = len(rem) - 1 - dn
        coeff = rem[-1] / lead
        q[shift] = coeff
        for i, c in enumerate(den):
            rem[shift + i] -= coeff * c
        _ptrim(rem)
    return q, rem


def _fpoly_gcd(a: Sequence, b: Sequence) -> list[Fraction]:
    """Monic gcd over Q, by the Euclidean algorithm."""
    x = _ptrim([Fraction(c) for c in a])
    y = _ptrim([Fraction(c) for c in b])
    while y:
        _, r = _poly_divmod(x, y)
        x, y = y, r
    if x:
        lead = x[-1]
        x = [c / lead for c in x]
    return x


def _clear_denominators(v: Sequence[Fraction]) -> list[int]:
    lcm = 1
    for c in v:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return [int(c * lcm) for c in v]


def _content(v: Iterable[int]) -> int:
    g = 0
    for c in v:
        g = math.gcd(g, c)
    return g


# ---------------------------------------------------------------------------
# binary forms


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous integer form; coefficients[i] multiplies X^i Y^(degree-i)."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("a form needs at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def content(self) -> int:
        return _content(self.coefficients)

    def evaluate(self, a: int, b: int) -> int:
        d = self.degree
        bpow = [1] * (d + 1)
        for i in range(1, d + 1):
            bpow[i] = bpow[i - 1] * b
        total = 0
        apow = 1
        for i, c in enumerate(self.coefficients):
            if c:
                total += c * apow * bpow[d - i]
            if i < d:
                apow *= a
        return total

    def evaluate_mod(self, a: int, b: int, m: int) -> int:
        d = self.degree
        bpow = [1] * (d + 1)
        for i in range(1, d + 1):
            bpow[i] = bpow[i - 1] * b % m
        total = 0
        apow = 1
        for i, c in enumerate(self.coefficients):
            if c:
                total = (total + c * apow * bpow[d - i]) % m
            if i < d:
                apow = apow * a % m
        return total

    def primitive_signed(self) -> "BinaryForm":
        """Divide by the content and make the highest nonzero coefficient positive."""
        c = self.content()
        if c == 0:
            raise ValueError("the zero form has no primitive part")
        v = [x // c for x in self.coefficients]
        for x in reversed(v):
            if x != 0:
                if x < 0:
                    v = [-y for y in v]
                break
        return BinaryForm(tuple(v))


def _form_mul(a: BinaryForm, b: BinaryForm) -> BinaryForm:
    out = [0] * (a.degree + b.degree + 1)
    for i, ca in enumerate(a.coefficients):
        if ca:
            for j, cb in enumerate(b.coefficients):
                if cb:
                    out[i + j] += ca * cb
    return BinaryForm(tuple(out))


def _form_pow(a: BinaryForm, k: int) -> BinaryForm:
    out = BinaryForm((1,))
    base = a
    while k:
        if k & 1:
            out = _form_mul(out, base)
        k >>= 1
        if k:
            base = _form_mul(base, base)
    return out


def resultant(f: BinaryForm, g: BinaryForm) -> int:
    """Homogeneous resultant of two forms of equal degree d.

    Determinant of the 2d x 2d Sylvester matrix, computed fraction-free
    (Bareiss), so the result is exact for any coefficient size.
    """
    if f.degree != g.degree:
        raise ValueError("resultant expects forms of equal degree")
    d = f.degree
    if d == 0:
        raise ValueError("degree must be at least 1")
    fd = list(reversed(f.coefficients))
    gd = list(reversed(g.coefficients))
    size = 2 * d
    rows = []
    for j in range(d):
        rows.append([0] * j + fd + [0] * (d - 1 - j))
    for j in range(d):
        rows.append([0] * j + gd + [0] * (d - 1 - j))
    return _bareiss_det(rows)


def _bareiss_det(mat: list[list[int]]) -> int:
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# the map itself


@dataclass(frozen=True)
class BadPrimeReport:
    """Primes of bad reduction; cofactor is a leftover composite, if any."""

    primes: frozenset[int]
    cofactor: Optional[int] = None

    @property
    def complete(self) -> bool:
        return self.cofactor is None


@dataclass(frozen=True)
class RationalMap:
    """A self-map of P^1(Q) given by a jointly primitive form pair."""

    F: BinaryForm
    G: BinaryForm
    res: int = field(compare=False)
    notes: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def make(
        cls,
        f_coeffs: Sequence[int],
        g_coeffs: Sequence[int],
        notes: Iterable[str] = (),
    ) -> "RationalMap":
        """Build a map from raw coefficient vectors of equal length.

        Clears the joint content, fixes the sign so the highest nonzero
        coefficient of F is positive, and computes the resultant eagerly.
        Raises DegenerateMapError when the resultant vanishes.
        """
        if len(f_coeffs) != len(g_coeffs):
            raise ValueError("form vectors must have equal length")
        if len(f_coeffs) < 2:
            raise ValueError("maps must have degree at least 1")
        joint = _content(list(f_coeffs) + list(g_coeffs))
        if joint == 0:
            raise DegenerateMapError("both forms are identically zero")
        f = [c // joint for c in f_coeffs]
        g = [c // joint for c in g_coeffs]
        top = next((c for c in reversed(f) if c != 0), 0)
        if top < 0:
            f = [-c for c in f]
            g = [-c for c in g]
        F = BinaryForm(tuple(f))
        G = BinaryForm(tuple(g))
        if F.is_zero or G.is_zero:
            raise DegenerateMapError(
                "one of the forms is identically zero; the pair does not "
                "define a self-map"
            )
        r = resultant(F, G)
        if r == 0:
            raise DegenerateMapError(
                "resultant is zero: numerator and denominator share a root "
                "(cancel the common factor and retry)"
            )
        return cls(F, G, r, tuple(notes))

    @property
    def degree(self) -> int:
        return self.F.degree

    def is_good_prime(self, p: int) -> bool:
        """Good reduction at p: p does not divide the resultant."""
        return self.res % p != 0

    def bad_primes(
        self,
        trial_bound: int = DEFAULT_TRIAL_BOUND,
        rho_steps: int = DEFAULT_RHO_STEPS,
    ) -> BadPrimeReport:
        """Primes dividing the resultant.

        When the factoring budget runs out, the primes found so far are
        returned along with the remaining composite cofactor, so callers can
        still trust every listed prime.
        """
        try:
            fac = factorize(abs(self.res), trial_bound, rho_steps)
        except FactorizationBudgetError as exc:
            return BadPrimeReport(
                frozenset(p for p, _ in exc.partial), exc.cofactor
            )
        return BadPrimeReport(frozenset(fac.primes()))

    def evaluate(self, x: PointLike) -> ProjectivePoint:
        """Apply the map to a rational point, renormalizing the output."""
        pt = normalize(x)
        a = self.F.evaluate(pt.x1, pt.x2)
        b = self.G.evaluate(pt.x1, pt.x2)
        return normalize((a, b))

    def evaluate_mod(self, r: ResiduePoint) -> ResiduePoint:
        """Apply the reduced map to a residue point (good primes only)."""
        if not self.is_good_prime(r.modulus.p):
            raise BadPrimeError(r.modulus.p)
        m = r.modulus.modulus
        a = self.F.evaluate_mod(r.c1, r.c2, m)
        b = self.G.evaluate_mod(r.c1, r.c2, m)
        return ResiduePoint.make(r.modulus, a, b)

    @cached_property
    def _iterates(self) -> dict[int, tuple[BinaryForm, BinaryForm]]:
        return {1: (self.F, self.G)}

    def iterate_forms(
        self, n: int, max_degree: int = DEFAULT_COMPOSE_DEGREE
    ) -> tuple[BinaryForm, BinaryForm]:
        """The form pair of the n-th iterate, jointly content-cleared.

        Degree grows like d^n, so this refuses to compose past `max_degree`.
        """
        if n < 1:
            raise ValueError("iterate index must be >= 1")
        if self.degree ** n > max_degree:
            raise ValueError(
                f"iterate degree {self.degree}^{n} exceeds the limit {max_degree}"
            )
        cache = self._iterates
        top = max(cache)
        while top < n:
            fk, gk = cache[top]
            fpow = [BinaryForm((1,))]
            gpow = [BinaryForm((1,))]
            for _ in range(self.degree):
                fpow.append(_form_mul(fpow[-1], fk))
                gpow.append(_form_mul(gpow[-1], gk))
            d = self.degree
            deg_next = d * fk.degree
            fv = [0] * (deg_next + 1)
            gv = [0] * (deg_next + 1)
            for i in range(d + 1):
                cf = self.F.coefficients[i]
                cg = self.G.coefficients[i]
                if cf == 0 and cg == 0:
                    continue
                mono = _form_mul(fpow[i], gpow[d - i])
                for j, c in enumerate(mono.coefficients):
                    if c:
                        fv[j] += cf * c
                        gv[j] += cg * c
            joint = _content(fv + gv)
            if joint > 1:
                fv = [c // joint for c in fv]
                gv = [c // joint for c in gv]
            top += 1
            cache[top] = (BinaryForm(tuple(fv)), BinaryForm(tuple(gv)))
        return cache[n]

    def __str__(self) -> str:
        num = _poly_text([c for c in self.F.coefficients])
        den = _poly_text([c for c in self.G.coefficients])
        if den == "1":
            return num
        return f"({num})/({den})"


def iterate_point(
    phi: RationalMap,
    x: PointLike,
    n: int,
    height_bits: int = DEFAULT_HEIGHT_BITS,
) -> ProjectivePoint:
    """phi^n(x) by pointwise iteration, guarding coordinate growth.

    Raises HeightBudgetError (carrying the last completed index) when an
    iterate's coordinates exceed `height_bits` bits.
    """
    pt = normalize(x)
    for j in range(1, n + 1):
        pt = phi.evaluate(pt)
        if max(abs(pt.x1).bit_length(), abs(pt.x2).bit_length()) > height_bits:
            raise HeightBudgetError(j - 1, height_bits)
    return pt


# ---------------------------------------------------------------------------
# parsing


def _tokenize(text: str) -> list[tuple[str, Optional[int]]]:
    toks: list[tuple[str, Optional[int]]] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j])))
            i = j
            continue
        if ch in "zZ":
            toks.append(("z", None))
            i += 1
            continue
        if ch in "+-*/^()":
            toks.append((ch, None))
            i += 1
            continue
        raise ValueError(f"unexpected character {ch!r} at position {i}")
    return toks


class _MapParser:
    """Recursive-descent parser producing an uncancelled (num, den) pair.

    Arithmetic is done on integer coefficient lists; division builds a
    rational function without cancelling, so a degenerate input like
    (z^2-1)/(z-1) stays degenerate and is reported via the resultant.
    """

    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def take(self) -> tuple[str, Optional[int]]:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> tuple[list[int], list[int]]:
        num, den = self.expr()
        if self.pos < len(self.toks):
            raise ValueError(f"trailing input at token {self.pos}")
        return num, den

    def expr(self) -> tuple[list[int], list[int]]:
        left = self.term()
        while self.peek() in ("+", "-"):
            op, _ = self.take()
            right = self.term()
            a, b = left
            c, d = right
            if op == "-":
                c = _pneg(c)
            left = (_padd(_pmul(a, d), _pmul(c, b)), _pmul(b, d))
        return left

    def term(self) -> tuple[list[int], list[int]]:
        left = self.factor()
        while True:
            nxt = self.peek()
            if nxt in ("*", "/"):
                op, _ = self.take()
                right = self.factor()
                a, b = left
                c, d = right
                if op == "*":
                    left = (_pmul(a, c), _pmul(b, d))
                else:
                    if not _ptrim(list(c)):
                        raise ValueError("division by the zero polynomial")
                    left = (_pmul(a, d), _pmul(b, c))
            elif nxt in ("z", "int", "("):
                # juxtaposition means multiplication: 2z, 3(z+1), z(z-2)
                right = self.factor()
                a, b = left
                c, d = right
                left = (_pmul(a, c), _pmul(b, d))
            else:
                return left

    def factor(self) -> tuple[list[int], list[int]]:
        neg = False
        while self.peek() in ("+", "-"):
            op, _ = self.take()
            if op == "-":
                neg = not neg
        num, den = self.power()
        if neg:
            num = _pneg(num)
        return num, den

    def power(self) -> tuple[list[int], list[int]]:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            kind, val = self.take() if self.pos < len(self.toks) else (None, None)
            if kind != "int":
                raise ValueError("exponent must be a nonnegative integer")
            a, b = base
            return _ppow(a, val), _ppow(b, val)
        return base

    def atom(self) -> tuple[list[int], list[int]]:
        if self.peek() is None:
            raise ValueError("unexpected end of input")
        kind, val = self.take()
        if kind == "int":
            return ([val] if val else [], [1])
        if kind == "z":
            return [0, 1], [1]
        if kind == "(":
            inner = self.expr()
            if self.peek() != ")":
                raise ValueError("missing closing parenthesis")
            self.take()
            return inner
        raise ValueError(f"unexpected token {kind!r}")


def parse_map(text: str) -> RationalMap:
    """Parse an affine rational function in z into a map on P^1.

    Accepts integer coefficients, + - * / ^, parentheses, and juxtaposition
    (2z). The numerator/denominator pair is homogenized without cancellation,
    so inputs sharing a root raise DegenerateMapError.
    """
    num, den = _MapParser(text).parse()
    num = _ptrim(list(num))
    den = _ptrim(list(den))
    if not den:
        raise ValueError("denominator is identically zero")
    if not num:
        raise DegenerateMapError("the zero map does not define a self-map of P^1")
    d = max(len(num), len(den)) - 1
    if d < 1:
        raise ValueError("constant maps are not allowed (degree must be >= 1)")
    f = num + [0] * (d + 1 - len(num))
    g = den + [0] * (d + 1 - len(den))
    return RationalMap.make(f, g)


def parse_polynomial(text: str) -> list[Fraction]:
    """Parse polynomial text into ascending Fraction coefficients.

    The same grammar as parse_map, except the result must be a polynomial:
    a denominator other than a nonzero constant is rejected.
    """
    num, den = _MapParser(text).parse()
    num = _ptrim(list(num))
    den = _ptrim(list(den))
    if len(den) != 1:
        raise ValueError("expected a polynomial, not a rational function")
    return [Fraction(c, den[0]) for c in num]


def _poly_text(asc: Sequence[int], var: str = "z") -> str:
    """Render an ascending coefficient list as a human-readable polynomial."""
    terms = []
    for i in range(len(asc) - 1, -1, -1):
        c = asc[i]
        if c == 0:
            continue
        if i == 0:
            body = str(abs(c))
        else:
            head = "" if abs(c) == 1 else str(abs(c))
            body = f"{head}{var}" if i == 1 else f"{head}{var}^{i}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    if not terms:
        return "0"
    return " ".join(terms)


# ---------------------------------------------------------------------------
# Newton maps


def newton_map(f_text: str) -> RationalMap:
    """The Newton iteration z - f/f' of a polynomial f, as a map on P^1.

    f must be a polynomial of degree >= 2 (rational coefficients fine). For
    squarefree f the result has degree deg f. A repeated factor is cancelled
    (the reduced rational function is what iteration actually computes) and
    recorded in the map's notes, since root multiplicities change the local
    behavior of the iteration.
    """
    num, den = _MapParser(f_text).parse()
    num = _ptrim(list(num))
    den = _ptrim(list(den))
    if len(den) != 1:
        raise ValueError("expected a polynomial, not a rational function")
    if len(num) < 3:
        raise ValueError("Newton maps need a polynomial of degree >= 2")
    fp = _pderiv(num)
    # z*f' - f has coefficient (i-1)*f_i at z^i
    zfp_minus_f = _ptrim([(i - 1) * num[i] for i in range(len(num))])
    notes: list[str] = []
    g = _fpoly_gcd(num, fp)
    if len(g) > 1:
        notes.append(
            "input polynomial is not squarefree; the common factor of f and "
            "f' was cancelled, which changes behavior at repeated roots"
        )
        qn, rn = _poly_divmod(zfp_minus_f, g)
        qd, rd = _poly_divmod(fp, g)
        if _ptrim(rn) or _ptrim(rd):
            raise ArithmeticError("gcd cancellation was not exact")
        # keep the pair on a single common scale: clear across both vectors
        cleared = _clear_denominators(list(qn) + list(qd))
        zfp_minus_f = cleared[: len(qn)]
        fp = cleared[len(qn):]
    d = max(len(zfp_minus_f), len(fp)) - 1
    f_vec = list(zfp_minus_f) + [0] * (d + 1 - len(zfp_minus_f))
    g_vec = list(fp) + [0] * (d + 1 - len(fp))
    return RationalMap.make(f_vec, g_vec, notes)


# ---------------------------------------------------------------------------
# polynomial type and dynatomic forms


def is_polynomial_type(
    phi: RationalMap,
    gamma: PointLike,
    k_max: int = 2,
    max_degree: int = DEFAULT_COMPOSE_DEGREE,
) -> Optional[int]:
    """Smallest k <= k_max making gamma a totally ramified fixed point of phi^k.

    Returns None when no such k exists. "Totally ramified" is checked on the
    form level: with gamma = [g1 : g2], the fiber form g2*F_k - g1*G_k must be
    a constant times (g2*X - g1*Y)^(d^k).
    """
    pt = normalize(gamma)
    for k in range(1, k_max + 1):
        if iterate_point(phi, pt, k) != pt:
            continue
        fk, gk = phi.iterate_forms(k, max_degree)
        fiber = [
            pt.x2 * fk.coefficients[i] - pt.x1 * gk.coefficients[i]
            for i in range(len(fk.coefficients))
        ]
        fiber_form = BinaryForm(tuple(fiber)).primitive_signed()
        line = BinaryForm((-pt.x1, pt.x2))
        target = _form_pow(line, phi.degree ** k).primitive_signed()
        if fiber_form == target:
            return k
    return None


@dataclass(frozen=True)
class DynatomicForm:
    """The primitive integer form whose roots have formal exact period n."""

    n: int
    form: BinaryForm

    @property
    def degree(self) -> int:
        return self.form.degree


def dynatomic_degree(d: int, n: int) -> int:
    """Expected degree of the period-n form of a degree-d map."""
    if n == 1:
        return d + 1
    total = 0
    for e in range(1, n + 1):
        if n % e == 0:
            total += mobius(n // e) * d ** e
    return total


def _period_form(phi: RationalMap, e: int, max_degree: int) -> list[int]:
    """Coefficient vector of Y*F_e - X*G_e (roots: points of period dividing e)."""
    fe, ge = phi.iterate_forms(e, max_degree)
    deg = fe.degree + 1
    out = [0] * (deg + 1)
    for i, c in enumerate(fe.coefficients):
        out[i] += c
    for i, c in enumerate(ge.coefficients):
        out[i + 1] -= c
    return out


def dynatomic(
    phi: RationalMap, n: int, max_degree: int = DEFAULT_COMPOSE_DEGREE
) -> DynatomicForm:
    """Period-n dynatomic form by the Moebius product over divisors of n.

    Numerator and denominator products are assembled separately and divided
    once, exactly; a nonzero remainder raises DynatomicDivisionError. The
    result is primitive with positive highest nonzero coefficient.
    """
    if n < 1:
        raise ValueError("period must be >= 1")
    num: list[int] = [1]
    den: list[int] = [1]
    num_deg = 0
    den_deg = 0
    for e in range(1, n + 1):
        if n % e:
            continue
        mu = mobius(n // e)
        if mu == 0:
            continue
        pe = _period_form(phi, e, max_degree)
        if mu == 1:
            num = _pmul(num, pe)
            num_deg += len(pe) - 1
        else:
            den = _pmul(den, pe)
            den_deg += len(pe) - 1
    if den_deg == 0 and den == [1]:
        quotient = [Fraction(c) for c in num]
        rem: list[Fraction] = []
    else:
        quotient, rem = _poly_divmod(num, den)
    if _ptrim(list(rem)):
        raise DynatomicDivisionError(
            f"period-{n} product division left a remainder"
        )
    target_degree = num_deg - den_deg
    ints = _clear_denominators(quotient)
    if len(ints) - 1 > target_degree:
        raise DynatomicDivisionError(
            f"period-{n} quotient degree exceeds the homogeneous degree"
        )
    vec = ints + [0] * (target_degree + 1 - len(ints))
    return DynatomicForm(n, BinaryForm(tuple(vec)).primitive_signed())


# ---------------------------------------------------------------------------
# rational points of exact period n


def _divisors_of(n: int) -> list[int]:
    return factorize(abs(n)).divisors()


def rational_periodic_points(
    phi: RationalMap, n: int, max_degree: int = DEFAULT_COMPOSE_DEGREE
) -> set[ProjectivePoint]:
    """All points of P^1(Q) with exact period n under phi.

    Candidate roots of the period-n dynatomic form are found by rational root
    search (divisor pairs of the extreme coefficients, plus 0 and infinity
    when the corresponding coefficients vanish); every candidate is then
    verified by direct iteration to have exact period n, which quietly drops
    the extraneous roots the Moebius product can pick up at multiplier-one
    cycles.
    """
    form = dynatomic(phi, n, max_degree).form
    v = list(form.coefficients)
    deg = form.degree
    candidates: set[ProjectivePoint] = set()
    if v[deg] == 0:
        candidates.add(INFINITY)
    if v[0] == 0:
        candidates.add(ZERO)
    lo = next((i for i in range(deg + 1) if v[i] != 0), None)
    hi = next((i for i in range(deg, -1, -1) if v[i] != 0), None)
    if lo is not None and hi is not None and lo < hi:
        r_divs = _divisors_of(v[lo])
        s_divs = _divisors_of(v[hi])
        for r in r_divs:
            for s in s_divs:
                if math.gcd(r, s) != 1:
                    continue
                for signed in (r, -r):
                    if form.evaluate(signed, s) == 0:
                        candidates.add(normalize((signed, s)))
    verified: set[ProjectivePoint] = set()
    for pt in candidates:
        cur = pt
        period = None
        for j in range(1, n + 1):
            cur = phi.evaluate(cur)
            if cur == pt:
                period = j
                break
        if period == n:
            verified.add(pt)
    return verified
