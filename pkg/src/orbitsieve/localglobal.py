"""Semidecision engine for "does the orbit of P ever meet Z?".

Two interleaved searches run under explicit budgets. The day side extends
the exact orbit and can only answer yes (a witness index) or, when the
orbit closes into a finite set, a definitive no. The night side reduces the
problem modulo prime powers of good reduction: each modulus yields an
eventually periodic hit set of candidate indices, and an empty hit set, or
an empty intersection of several, rules the meeting out. Both kinds of
output are packaged as certificates that can be re-checked from scratch.

Every certificate of kind "empty" relies only on exact finite computations
(a closed orbit disjoint from the targets, or modular orbits whose hit sets
admit no common index), so verification does not trust the engine.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .numtheory import (
    DEFAULT_RHO_STEPS,
    ResidueClassSet,
    crt_pair,
    factorial_valuation,
    is_prime,
    next_prime,
    valuation,
)
from .orbit import HitSet, ModOrbit, OrbitSummary, hit_set, orbit_mod, orbit_rational
from .projective import (
    PointLike,
    PrimePowerModulus,
    ProjectivePoint,
    ResiduePoint,
    normalize,
)
from .ratmap import (
    DEFAULT_HEIGHT_BITS,
    RationalMap,
    _fpoly_gcd,
    iterate_point,
    parse_polynomial,
)

__all__ = [
    "Budgets",
    "DecisionProblem",
    "ModulusEvidence",
    "Certificate",
    "CycleBlowupError",
    "intersect_hit_sets",
    "night_schedule",
    "decide",
    "verify_certificate",
    "certificate_to_dict",
    "certificate_from_dict",
    "problem_to_dict",
    "problem_from_dict",
    "FactorialDepthRow",
    "degree_one_demo",
    "PlaceReport",
    "newton_place_report",
]


class CycleBlowupError(RuntimeError):
    """Combining hit sets would need a cycle lcm past the configured cap."""

    def __init__(self, value: int, cap: int):
        self.value = value
        self.cap = cap
        super().__init__(f"cycle lcm {value} exceeds the cap {cap}")


@dataclass(frozen=True)
class Budgets:
    """Resource limits for one decide() run. All independently settable."""

    day_steps: int = 256
    night_stages: int = 12
    height_bits: int = DEFAULT_HEIGHT_BITS
    factor_steps: int = DEFAULT_RHO_STEPS
    day_batch: int = 32
    cycle_lcm_cap: int = 10 ** 7

    def __post_init__(self):
        for name in (
            "day_steps",
            "night_stages",
            "height_bits",
            "factor_steps",
            "day_batch",
            "cycle_lcm_cap",
        ):
            if getattr(self, name) < 1:
                raise ValueError(f"budget {name} must be positive")


@dataclass(frozen=True)
class DecisionProblem:
    """A map, a start point, a finite target set, and excluded primes."""

    phi: RationalMap
    start: ProjectivePoint
    targets: tuple[ProjectivePoint, ...]
    excluded_primes: frozenset[int] = frozenset()
    budgets: Budgets = Budgets()

    @classmethod
    def make(
        cls,
        phi: RationalMap,
        start: PointLike,
        targets: Iterable[PointLike],
        excluded_primes: Iterable[int] = (),
        budgets: Budgets = Budgets(),
    ) -> "DecisionProblem":
        tset = sorted({normalize(t) for t in targets})
        if not tset:
            raise ValueError("the target set must be nonempty")
        banned = frozenset(excluded_primes)
        for q in banned:
            if not is_prime(q):
                raise ValueError(f"excluded entry {q} is not prime")
        return cls(phi, normalize(start), tuple(tset), banned, budgets)


@dataclass(frozen=True)
class ModulusEvidence:
    """One modulus worth of night-side computation, self-contained."""

    modulus: PrimePowerModulus
    orbit: ModOrbit
    hits: HitSet


@dataclass(frozen=True)
class Certificate:
    """Outcome of decide(): witness, empty, or exhausted.

    kind "witness": witness_index holds the meeting index.
    kind "empty", finite_orbit set: the exact orbit closed without meeting
    the targets.
    kind "empty", evidence set: the listed moduli have hit sets with empty
    intersection (a single modulus with an empty hit set is the common
    special case).
    kind "exhausted": budgets ran out; carries no claim either way.
    """

    kind: str
    witness_index: Optional[int] = None
    finite_orbit: Optional[OrbitSummary] = None
    evidence: tuple[ModulusEvidence, ...] = ()
    day_steps_done: int = 0
    night_stages_done: int = 0
    day_status: str = "running"
    examined: tuple[tuple[int, int, bool], ...] = ()
    skipped: tuple[tuple[int, int, str], ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def is_definitive(self) -> bool:
        return self.kind in ("witness", "empty")


def intersect_hit_sets(
    sets: Sequence[HitSet], cycle_lcm_cap: int = Budgets().cycle_lcm_cap
) -> HitSet:
    """Exact intersection of hit sets, as a hit set.

    The combined cycle length is the lcm of the inputs' cycle lengths
    (capped: CycleBlowupError past `cycle_lcm_cap`), the threshold is the
    max, residues are combined pairwise by the Chinese remainder theorem,
    and indices below the threshold are checked directly.
    """
    if not sets:
        raise ValueError("need at least one hit set")
    acc = sets[0]
    for hs in sets[1:]:
        acc = _intersect_pair(acc, hs, cycle_lcm_cap)
    return acc


def _intersect_pair(a: HitSet, b: HitSet, cap: int) -> HitSet:
    c = math.lcm(a.cycle_length, b.cycle_length)
    if c > cap:
        raise CycleBlowupError(c, cap)
    t = max(a.threshold, b.threshold)
    combined: set[int] = set()
    for ra in a.residues.residues:
        for rb in b.residues.residues:
            got = crt_pair(ra, a.cycle_length, rb, b.cycle_length)
            if got is not None:
                combined.add(got[0])
    exceptional = frozenset(
        n for n in range(t) if a.contains(n) and b.contains(n)
    )
    return HitSet(t, exceptional, c, ResidueClassSet(c, tuple(sorted(combined))))


class _GoodPrimeList:
    """Lazy 1-based list of primes usable for reduction, recording skips."""

    def __init__(self, phi: RationalMap, excluded: frozenset[int]):
        self.phi = phi
        self.excluded = excluded
        self.primes: list[int] = []
        self.skips: list[tuple[int, int, str]] = []
        self._cursor = 1

    def get(self, i: int) -> int:
        while len(self.primes) < i:
            q = next_prime(self._cursor)
            self._cursor = q
            if q in self.excluded:
                self.skips.append((q, 0, "excluded"))
                continue
            if not self.phi.is_good_prime(q):
                self.skips.append((q, 0, "bad reduction"))
                continue
            self.primes.append(q)
        return self.primes[i - 1]


def night_schedule(
    phi: RationalMap, excluded: Iterable[int], stages: int
) -> list[PrimePowerModulus]:
    """The prime-power moduli examined in `stages` stages, in order.

    Stage s (1-based) introduces p_i^k for every i + k == s + 1, where p_i
    is the i-th prime of good reduction outside the excluded set; so each
    prime climbs one power per stage while one new prime joins. Cheap small
    moduli come first and every prime power is reached eventually.
    """
    pool = _GoodPrimeList(phi, frozenset(excluded))
    out = []
    for s in range(1, stages + 1):
        for i in range(1, s + 1):
            out.append(PrimePowerModulus(pool.get(i), s + 1 - i))
    return out


@dataclass
class _DayState:
    points: list[ProjectivePoint]
    seen: dict[ProjectivePoint, int]
    status: str = "running"


def _day_advance(
    phi: RationalMap,
    day: _DayState,
    targets: frozenset[ProjectivePoint],
    steps: int,
    budgets: Budgets,
) -> Optional[int]:
    """Extend the exact orbit by up to `steps` evaluations.

    Returns a witness index if a target is reached; flips day.status to
    "closed", "height", or "budget" when iteration must stop.
    """
    for _ in range(steps):
        if len(day.points) - 1 >= budgets.day_steps:
            day.status = "budget"
            return None
        nxt = phi.evaluate(day.points[-1])
        size = max(abs(nxt.x1).bit_length(), abs(nxt.x2).bit_length())
        if size > budgets.height_bits:
            day.status = "height"
            return None
        if nxt in targets:
            day.points.append(nxt)
            return len(day.points) - 1
        if nxt in day.seen:
            day.points.append(nxt)
            day.status = "closed"
            return None
        day.seen[nxt] = len(day.points)
        day.points.append(nxt)
    return None


def _closed_orbit_summary(day: _DayState, start: ProjectivePoint) -> OrbitSummary:
    closing = day.points[-1]
    tail = day.seen[closing]
    cycle = len(day.points) - 1 - tail
    return OrbitSummary(
        start, tuple(day.points), "preperiodic", tail, cycle, len(day.points) - 1
    )


def _night_one(
    phi: RationalMap,
    start: ProjectivePoint,
    targets: Sequence[ProjectivePoint],
    m: PrimePowerModulus,
) -> ModulusEvidence:
    orb = orbit_mod(phi, start, m)
    return ModulusEvidence(m, orb, hit_set(orb, targets))


def decide(problem: DecisionProblem, jobs: int = 1) -> Certificate:
    """Run the day/night search under the problem's budgets.

    Interleaving: each stage first extends the exact orbit by one day batch,
    then examines the stage's new moduli. A modulus whose own hit set is
    empty settles the problem by itself and is emitted as a singleton
    certificate. Moduli with nonempty hit sets are collected, and only after
    the last stage is their combined intersection attempted (then greedily
    minimized); this keeps single-modulus certificates, the strongest and
    cheapest to verify, in front.

    Deterministic for fixed budgets: the schedule, the orbit arithmetic, and
    the fold order do not depend on timing or on `jobs`.
    """
    phi = problem.phi
    budgets = problem.budgets
    targets = frozenset(problem.targets)
    warnings: list[str] = []
    if phi.degree < 2:
        warnings.append(
            "degree-one map: modular hit sets can stay nonempty at every "
            "modulus even for orbits that miss the targets, so only a "
            "witness or a closed orbit can settle this problem"
        )
    day = _DayState([problem.start], {problem.start: 0})
    if problem.start in targets:
        return Certificate(
            "witness",
            witness_index=0,
            day_status="closed",
            warnings=tuple(warnings),
        )
    pool = _GoodPrimeList(phi, problem.excluded_primes)
    collected: list[ModulusEvidence] = []
    examined: list[tuple[int, int, bool]] = []
    stages_done = 0

    def finish(kind: str, **kw) -> Certificate:
        return Certificate(
            kind,
            day_steps_done=len(day.points) - 1,
            night_stages_done=stages_done,
            day_status=day.status,
            examined=tuple(examined),
            skipped=tuple(pool.skips),
            warnings=tuple(warnings),
            **kw,
        )

    for stage in range(1, budgets.night_stages + 1):
        if day.status == "running":
            wit = _day_advance(phi, day, targets, budgets.day_batch, budgets)
            if wit is not None:
                return finish("witness", witness_index=wit)
            if day.status == "closed":
                return finish(
                    "empty", finite_orbit=_closed_orbit_summary(day, problem.start)
                )
        moduli = [
            PrimePowerModulus(pool.get(i), stage + 1 - i)
            for i in range(1, stage + 1)
        ]
        if jobs > 1 and len(moduli) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pxc:
                evidence = list(
                    pxc.map(
                        lambda m: _night_one(phi, problem.start, problem.targets, m),
                        moduli,
                    )
                )
        else:
            evidence = [
                _night_one(phi, problem.start, problem.targets, m) for m in moduli
            ]
        stages_done = stage
        for ev in evidence:
            empty = ev.hits.is_empty()
            examined.append((ev.modulus.p, ev.modulus.k, empty))
            if empty:
                return finish("empty", evidence=(ev,))
            collected.append(ev)
    # drain whatever day budget remains
    while day.status == "running":
        wit = _day_advance(phi, day, targets, budgets.day_batch, budgets)
        if wit is not None:
            return finish("witness", witness_index=wit)
        if day.status == "closed":
            return finish(
                "empty", finite_orbit=_closed_orbit_summary(day, problem.start)
            )
    # last chance: a combined intersection over everything collected
    folded: Optional[HitSet] = None
    used: list[ModulusEvidence] = []
    skipped_fold: list[tuple[int, int, str]] = []
    for ev in collected:
        try:
            cand = (
                ev.hits
                if folded is None
                else _intersect_pair(folded, ev.hits, budgets.cycle_lcm_cap)
            )
        except CycleBlowupError:
            skipped_fold.append(
                (ev.modulus.p, ev.modulus.k, "cycle lcm past the cap")
            )
            continue
        folded = cand
        used.append(ev)
        if folded.is_empty():
            break
    pool.skips.extend(skipped_fold)
    if folded is not None and folded.is_empty():
        family = _minimize_family(used, budgets.cycle_lcm_cap)
        return finish("empty", evidence=tuple(family))
    return finish("exhausted")


def _minimize_family(
    family: Sequence[ModulusEvidence], cap: int
) -> list[ModulusEvidence]:
    """Greedily drop moduli whose removal keeps the intersection empty."""
    current = list(family)
    for ev in list(current):
        if len(current) == 1:
            break
        rest = [e for e in current if e is not ev]
        try:
            if intersect_hit_sets([e.hits for e in rest], cap).is_empty():
                current = rest
        except CycleBlowupError:
            continue
    return current


def verify_certificate(problem: DecisionProblem, cert: Certificate) -> bool:
    """Re-check a certificate from scratch; True only for a sound one.

    Witness: re-iterate to the claimed index and compare against the
    targets. Empty with a finite orbit: re-run the orbit, require closure,
    equality with the stored points, and disjointness from the targets.
    Empty with moduli: require each modulus to be an allowed good prime
    power, recompute its orbit and hit set, compare both, and re-intersect.
    Exhausted certificates assert nothing and never verify.
    """
    phi = problem.phi
    targets = frozenset(problem.targets)
    if cert.kind == "witness":
        if cert.witness_index is None or cert.witness_index < 0:
            return False
        try:
            pt = iterate_point(
                phi, problem.start, cert.witness_index, problem.budgets.height_bits
            )
        except Exception:
            return False
        return pt in targets
    if cert.kind != "empty":
        return False
    if cert.finite_orbit is not None:
        redone = orbit_rational(
            phi,
            problem.start,
            problem.budgets.day_steps,
            problem.budgets.height_bits,
        )
        if not redone.is_preperiodic:
            return False
        if redone.points != cert.finite_orbit.points:
            return False
        if redone.tail != cert.finite_orbit.tail:
            return False
        if redone.cycle != cert.finite_orbit.cycle:
            return False
        return not (set(redone.points) & targets)
    if not cert.evidence:
        return False
    redone_hits: list[HitSet] = []
    for ev in cert.evidence:
        p = ev.modulus.p
        if p in problem.excluded_primes:
            return False
        if not phi.is_good_prime(p):
            return False
        try:
            orb = orbit_mod(phi, problem.start, ev.modulus)
        except Exception:
            return False
        if orb != ev.orbit:
            return False
        hs = hit_set(orb, problem.targets)
        if hs != ev.hits:
            return False
        redone_hits.append(hs)
    try:
        combined = intersect_hit_sets(
            redone_hits, problem.budgets.cycle_lcm_cap
        )
    except CycleBlowupError:
        return False
    return combined.is_empty()


# ---------------------------------------------------------------------------
# serialization (all integers as decimal strings, layout deterministic)


def _pt(p: ProjectivePoint) -> list[str]:
    return [str(p.x1), str(p.x2)]


def _unpt(v: Sequence[str]) -> ProjectivePoint:
    return normalize((int(v[0]), int(v[1])))


def problem_to_dict(problem: DecisionProblem) -> dict:
    b = problem.budgets
    return {
        "map": {
            "f": [str(c) for c in problem.phi.F.coefficients],
            "g": [str(c) for c in problem.phi.G.coefficients],
            "degree": str(problem.phi.degree),
            "resultant": str(problem.phi.res),
        },
        "start": _pt(problem.start),
        "targets": [_pt(t) for t in problem.targets],
        "excluded_primes": [str(q) for q in sorted(problem.excluded_primes)],
        "budgets": {
            "day_steps": str(b.day_steps),
            "night_stages": str(b.night_stages),
            "height_bits": str(b.height_bits),
            "factor_steps": str(b.factor_steps),
            "day_batch": str(b.day_batch),
            "cycle_lcm_cap": str(b.cycle_lcm_cap),
        },
    }


def problem_from_dict(doc: dict) -> DecisionProblem:
    m = doc["map"]
    phi = RationalMap.make(
        [int(c) for c in m["f"]], [int(c) for c in m["g"]]
    )
    b = doc["budgets"]
    budgets = Budgets(
        day_steps=int(b["day_steps"]),
        night_stages=int(b["night_stages"]),
        height_bits=int(b["height_bits"]),
        factor_steps=int(b["factor_steps"]),
        day_batch=int(b["day_batch"]),
        cycle_lcm_cap=int(b["cycle_lcm_cap"]),
    )
    return DecisionProblem.make(
        phi,
        _unpt(doc["start"]),
        [_unpt(t) for t in doc["targets"]],
        [int(q) for q in doc["excluded_primes"]],
        budgets,
    )


def _orbit_summary_to_dict(o: OrbitSummary) -> dict:
    return {
        "tail": str(o.tail),
        "cycle": str(o.cycle),
        "points": [_pt(p) for p in o.points],
    }


def _orbit_summary_from_dict(doc: dict, start: ProjectivePoint) -> OrbitSummary:
    pts = tuple(_unpt(v) for v in doc["points"])
    tail = int(doc["tail"])
    cycle = int(doc["cycle"])
    return OrbitSummary(start, pts, "preperiodic", tail, cycle, len(pts) - 1)


def _evidence_to_dict(ev: ModulusEvidence) -> dict:
    return {
        "p": str(ev.modulus.p),
        "k": str(ev.modulus.k),
        "orbit": {
            "tail": str(ev.orbit.tail),
            "cycle": str(ev.orbit.cycle),
            "sequence": [[str(r.c1), str(r.c2)] for r in ev.orbit.sequence],
        },
        "hit_set": {
            "threshold": str(ev.hits.threshold),
            "exceptional": [str(n) for n in sorted(ev.hits.exceptional)],
            "cycle_length": str(ev.hits.cycle_length),
            "residues": [str(r) for r in ev.hits.residues.residues],
        },
    }


def _evidence_from_dict(doc: dict) -> ModulusEvidence:
    mod = PrimePowerModulus(int(doc["p"]), int(doc["k"]))
    seq = tuple(
        ResiduePoint(mod, int(a), int(b)) for a, b in doc["orbit"]["sequence"]
    )
    orb = ModOrbit(mod, int(doc["orbit"]["tail"]), int(doc["orbit"]["cycle"]), seq)
    hs_doc = doc["hit_set"]
    hs = HitSet(
        threshold=int(hs_doc["threshold"]),
        exceptional=frozenset(int(n) for n in hs_doc["exceptional"]),
        cycle_length=int(hs_doc["cycle_length"]),
        residues=ResidueClassSet(
            int(hs_doc["cycle_length"]),
            tuple(int(r) for r in hs_doc["residues"]),
        ),
    )
    return ModulusEvidence(mod, orb, hs)


def certificate_to_dict(problem: DecisionProblem, cert: Certificate) -> dict:
    doc: dict = {
        "schema_version": "1",
        "kind": cert.kind,
        "problem": problem_to_dict(problem),
        "engine": {
            "day_steps_done": str(cert.day_steps_done),
            "night_stages_done": str(cert.night_stages_done),
            "day_status": cert.day_status,
            "examined": [
                {"p": str(p), "k": str(k), "hit_set_empty": empty}
                for p, k, empty in cert.examined
            ],
            "skipped": [
                {"p": str(p), "k": str(k), "reason": reason}
                for p, k, reason in cert.skipped
            ],
            "warnings": list(cert.warnings),
        },
    }
    if cert.kind == "witness":
        doc["witness_index"] = str(cert.witness_index)
    elif cert.kind == "empty":
        if cert.finite_orbit is not None:
            doc["finite_orbit"] = _orbit_summary_to_dict(cert.finite_orbit)
        else:
            doc["moduli"] = [_evidence_to_dict(ev) for ev in cert.evidence]
    return doc


def certificate_from_dict(doc: dict) -> tuple[DecisionProblem, Certificate]:
    if doc.get("schema_version") != "1":
        raise ValueError("unsupported certificate schema version")
    problem = problem_from_dict(doc["problem"])
    eng = doc.get("engine", {})
    base = dict(
        day_steps_done=int(eng.get("day_steps_done", "0")),
        night_stages_done=int(eng.get("night_stages_done", "0")),
        day_status=eng.get("day_status", "running"),
        examined=tuple(
            (int(e["p"]), int(e["k"]), bool(e["hit_set_empty"]))
            for e in eng.get("examined", [])
        ),
        skipped=tuple(
            (int(e["p"]), int(e["k"]), str(e["reason"]))
            for e in eng.get("skipped", [])
        ),
        warnings=tuple(eng.get("warnings", [])),
    )
    kind = doc["kind"]
    if kind == "witness":
        cert = Certificate(
            "witness", witness_index=int(doc["witness_index"]), **base
        )
    elif kind == "empty":
        if "finite_orbit" in doc:
            cert = Certificate(
                "empty",
                finite_orbit=_orbit_summary_from_dict(
                    doc["finite_orbit"], problem.start
                ),
                **base,
            )
        else:
            cert = Certificate(
                "empty",
                evidence=tuple(
                    _evidence_from_dict(e) for e in doc.get("moduli", [])
                ),
                **base,
            )
    elif kind == "exhausted":
        cert = Certificate("exhausted", **base)
    else:
        raise ValueError(f"unknown certificate kind {kind!r}")
    return problem, cert


# ---------------------------------------------------------------------------
# the degree-one demonstration


@dataclass(frozen=True)
class FactorialDepthRow:
    """Least n with p^k dividing n!, found by stepping through multiples of p."""

    p: int
    k: int
    minimal_n: int


def degree_one_demo(max_prime: int = 5, max_depth: int = 3) -> list[FactorialDepthRow]:
    """Rows (p, k, least n with v_p(n!) >= k) for p <= max_prime, k <= max_depth.

    This is the arithmetic heart of why the translation map z + 1 starting
    at 1 with target 0 can never get an empty modular certificate: past row
    (p, k), every index of the form n! - 1 is a hit mod p^k (the orbit value
    n! is divisible by p^k), so the hit sets all stay nonempty while the
    exact orbit 2, 3, 4, ... never reaches 0.
    """
    rows = []
    p = 2
    while p <= max_prime:
        for k in range(1, max_depth + 1):
            n = p
            while factorial_valuation(n, p) < k:
                n += p
            rows.append(FactorialDepthRow(p, k, n))
        p = next_prime(p)
    return rows


# ---------------------------------------------------------------------------
# Newton iteration, one report per place


@dataclass
class PlaceReport:
    """Convergence report for Newton iteration at one place of Q."""

    place: Union[int, str]
    verdict: str
    detail: dict


def _frac_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _float_eval(coeffs: Sequence[Fraction], x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + float(c)
    return acc


def _frac_valuation(q: Fraction, p: int) -> int:
    return valuation(q.numerator, p) - valuation(q.denominator, p)


def _real_report(
    coeffs: Sequence[Fraction], deriv: Sequence[Fraction], alpha: Fraction, iters: int
) -> PlaceReport:
    x = float(alpha)
    verdict = "undecided"
    residual = None
    note = None
    done = 0
    for _ in range(iters):
        fx = _float_eval(coeffs, x)
        if not math.isfinite(fx):
            note = "iterates overflowed double precision"
            break
        residual = abs(fx)
        if residual < 1e-12:
            verdict = "converges"
            break
        dfx = _float_eval(deriv, x)
        if not math.isfinite(dfx) or dfx == 0.0:
            note = "derivative vanished or overflowed"
            break
        x = x - fx / dfx
        done += 1
    else:
        fx = _float_eval(coeffs, x)
        if math.isfinite(fx):
            residual = abs(fx)
            if residual < 1e-12:
                verdict = "converges"
    detail = {
        "iterations": done,
        "final_residual": residual,
        "final_x": x if math.isfinite(x) else None,
    }
    if note:
        detail["note"] = note
    return PlaceReport("real", verdict, detail)


def _padic_report(
    coeffs: Sequence[Fraction],
    deriv: Sequence[Fraction],
    alpha: Fraction,
    p: int,
    iters: int,
) -> PlaceReport:
    x = alpha
    vals: list[int] = []
    diffs: list[int] = []
    note = None
    exact = False
    for j in range(iters + 1):
        fx = _frac_eval(coeffs, x)
        if fx == 0:
            exact = True
            note = "landed exactly on a rational root"
            break
        vals.append(_frac_valuation(fx, p))
        if j == iters:
            break
        dfx = _frac_eval(deriv, x)
        if dfx == 0:
            note = "derivative vanished at an iterate"
            break
        nxt = x - fx / dfx
        diffs.append(_frac_valuation(nxt - x, p))
        x = nxt
    if exact:
        verdict = "converges"
    elif note is not None:
        verdict = "undecided"
    else:
        w = min(len(vals), max(3, (iters + 1) // 2))
        tail = vals[-w:]
        dtail = diffs[-min(len(diffs), w):] if diffs else []
        increasing = all(a < b for a, b in zip(tail, tail[1:])) and all(
            a < b for a, b in zip(dtail, dtail[1:])
        )
        decreasing = all(a > b for a, b in zip(tail, tail[1:]))
        if increasing and len(tail) >= 3:
            verdict = "converges"
        elif max(tail) - min(tail) <= 1:
            verdict = "diverges"
        elif decreasing and len(tail) >= 3:
            verdict = "diverges"
        else:
            verdict = "undecided"
    detail = {
        "valuations": vals,
        "difference_valuations": diffs,
    }
    if note:
        detail["note"] = note
    return PlaceReport(p, verdict, detail)


def newton_place_report(
    f_text: str,
    alpha: Union[int, str, Fraction],
    primes: Iterable[int],
    real_iters: int = 64,
    p_iters: int = 10,
) -> list[PlaceReport]:
    """Run Newton's iteration for f from alpha at the real place and at the
    given primes, reporting per-place convergence evidence.

    The real side iterates in double precision and calls convergence when
    the residual falls below 1e-12. Each p-adic side iterates exactly in Q
    and inspects v_p(f(x_j)): strictly increasing valuations with strictly
    increasing step valuations (the iterates are Cauchy at the observed
    depth) is convergence, a flat valuation window is divergence, strict
    decrease (escape toward infinity) also counts as divergence, and
    anything mixed stays undecided. f must be squarefree of degree >= 2,
    and alpha must not already be a root.
    """
    coeffs = parse_polynomial(f_text)
    if len(coeffs) < 3:
        raise ValueError("Newton reports need a polynomial of degree >= 2")
    deriv = [coeffs[i] * i for i in range(1, len(coeffs))]
    if len(_fpoly_gcd(coeffs, deriv)) > 1:
        raise ValueError("polynomial must be squarefree")
    alpha_f = alpha if isinstance(alpha, Fraction) else Fraction(str(alpha))
    if _frac_eval(coeffs, alpha_f) == 0:
        raise ValueError("alpha is already a root of f")
    reports = [_real_report(coeffs, deriv, alpha_f, real_iters)]
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        reports.append(_padic_report(coeffs, deriv, alpha_f, p, p_iters))
    return reports
