"""Tests for orbit computation over Q and over residue rings."""

import pytest

from orbitsieve.numtheory import good_primes
from orbitsieve.orbit import HitSet, ModOrbit, hit_set, orbit_mod, orbit_rational
from orbitsieve.projective import (
    INFINITY,
    PrimePowerModulus,
    ResiduePoint,
    normalize,
    reduce_mod,
)
from orbitsieve.numtheory import ResidueClassSet
from orbitsieve.ratmap import parse_map


def test_orbit_rational_preperiodic():
    phi = parse_map("z^2-1")
    summary = orbit_rational(phi, 0, 10)
    assert summary.is_preperiodic
    assert summary.tail == 0
    assert summary.cycle == 2
    assert len(summary.points) == 3
    assert summary.points[2] == summary.points[0]
    assert summary.cycle_points() == (normalize(0), normalize(-1))
    assert summary.distinct_points() == (normalize(0), normalize(-1))


def test_orbit_rational_truncated():
    phi = parse_map("z^2-1")
    summary = orbit_rational(phi, 3, 5)
    assert summary.status == "truncated"
    assert summary.steps_done == 5
    assert [p.as_fraction() for p in summary.points[:4]] == [3, 8, 63, 3968]
    with pytest.raises(ValueError):
        summary.cycle_points()


def test_orbit_rational_fixed_point():
    summary = orbit_rational(parse_map("z^2"), INFINITY, 10)
    assert summary.is_preperiodic
    assert (summary.tail, summary.cycle) == (0, 1)


def test_orbit_rational_height_budget_is_a_status():
    summary = orbit_rational(parse_map("z^2"), 2, 100, height_bits=64)
    assert summary.status == "truncated"
    assert 0 < summary.steps_done < 10


def test_orbit_rational_tail():
    # -1 -> 0 -> -1 under z^2 - 1, but 2 -> 3 -> 8 ... never closes;
    # 1 -> 0 -> -1 -> 0 has a genuine tail
    summary = orbit_rational(parse_map("z^2-1"), 1, 10)
    assert summary.is_preperiodic
    assert (summary.tail, summary.cycle) == (1, 2)


def test_orbit_mod_known_values():
    phi = parse_map("z^2-1")
    m5 = PrimePowerModulus(5, 1)
    orb = orbit_mod(phi, 3, m5)
    assert (orb.tail, orb.cycle) == (0, 1)
    assert orb.sequence == (ResiduePoint(m5, 3, 1),)

    m7 = PrimePowerModulus(7, 1)
    orb = orbit_mod(phi, 3, m7)
    assert (orb.tail, orb.cycle) == (2, 2)
    assert [(r.c1, r.c2) for r in orb.sequence] == [(3, 1), (1, 1), (0, 1), (6, 1)]

    m3 = PrimePowerModulus(3, 1)
    orb = orbit_mod(phi, 0, m3)
    assert (orb.tail, orb.cycle) == (0, 2)
    assert [(r.c1, r.c2) for r in orb.sequence] == [(0, 1), (2, 1)]


def test_orbit_mod_rejects_bad_primes():
    from orbitsieve.ratmap import BadPrimeError

    with pytest.raises(BadPrimeError):
        orbit_mod(parse_map("(z^2+1)/(2z)"), 1, PrimePowerModulus(2, 1))


def test_mod_orbit_point_at_extends_periodically():
    orb = orbit_mod(parse_map("z^2-1"), 3, PrimePowerModulus(7, 1))
    assert orb.point_at(1) == orb.sequence[1]
    assert orb.point_at(4) == orb.sequence[2]
    assert orb.point_at(5) == orb.sequence[3]
    assert orb.point_at(100) == orb.sequence[2]


def _naive_mod_orbit(phi, start, m):
    """Independent recomputation with plain integer pairs.

    Residues are canonicalized by hand: scale the second coordinate to 1
    when it is a unit, otherwise scale the first to 1.
    """
    mod = m.modulus

    def canon(a, b):
        a %= mod
        b %= mod
        if b % m.p != 0:
            inv = pow(b, -1, mod)
            return (a * inv) % mod, 1
        inv = pow(a, -1, mod)
        return 1, (b * inv) % mod

    pt = normalize(start)
    cur = canon(pt.x1, pt.x2)
    seq = [cur]
    seen = {cur: 0}
    while True:
        a, b = cur
        cur = canon(phi.F.evaluate(a, b) % mod, phi.G.evaluate(a, b) % mod)
        if cur in seen:
            return seen[cur], len(seq) - seen[cur], seq
        seen[cur] = len(seq)
        seq.append(cur)


def test_orbit_mod_matches_naive_recomputation_up_to_125():
    maps = [parse_map(t) for t in ("z^2-1", "(z^2+1)/(2z)", "z^3-2", "z+1")]
    moduli = []
    for p in good_primes():
        if p > 125:
            break
        k = 1
        while p ** k <= 125:
            moduli.append(PrimePowerModulus(p, k))
            k += 1
    starts = [normalize(3), normalize(0), INFINITY]
    for phi in maps:
        for m in moduli:
            if not phi.is_good_prime(m.p):
                continue
            for start in starts:
                orb = orbit_mod(phi, start, m)
                tail, cycle, seq = _naive_mod_orbit(phi, start, m)
                assert (orb.tail, orb.cycle) == (tail, cycle), (str(phi), str(m))
                assert [(r.c1, r.c2) for r in orb.sequence] == seq
                assert orb.tail + orb.cycle <= m.point_count()


def test_orbit_mod_cycle_divides_rational_cycle():
    # 0 is periodic of period 2 under z^2 - 1; its reduction must be
    # periodic with a cycle dividing 2 at every good prime power
    phi = parse_map("z^2-1")
    for m in (
        PrimePowerModulus(2, 1),
        PrimePowerModulus(3, 2),
        PrimePowerModulus(5, 1),
        PrimePowerModulus(7, 1),
        PrimePowerModulus(11, 1),
    ):
        orb = orbit_mod(phi, 0, m)
        assert orb.tail == 0
        assert 2 % orb.cycle == 0


def test_hit_set_known_values():
    phi = parse_map("z^2-1")
    orb5 = orbit_mod(phi, 3, PrimePowerModulus(5, 1))
    hs = hit_set(orb5, [normalize(0)])
    assert hs.is_empty()

    hs = hit_set(orb5, [normalize(63)])
    assert (hs.threshold, hs.cycle_length) == (0, 1)
    assert hs.residues.residues == (0,)
    assert all(hs.contains(n) for n in range(10))

    orb7 = orbit_mod(phi, 3, PrimePowerModulus(7, 1))
    hs = hit_set(orb7, [normalize(0)])
    assert hs.threshold == 2
    assert hs.exceptional == frozenset()
    assert hs.cycle_length == 2
    assert hs.residues.residues == (0,)
    assert [n for n in range(10) if hs.contains(n)] == [2, 4, 6, 8]


def test_hit_set_membership_matches_direct_scan():
    phi = parse_map("z^2-1")
    targets = [normalize(0), normalize(63), INFINITY]
    for m in (
        PrimePowerModulus(2, 2),
        PrimePowerModulus(3, 1),
        PrimePowerModulus(5, 1),
        PrimePowerModulus(7, 1),
        PrimePowerModulus(11, 1),
        PrimePowerModulus(13, 1),
    ):
        orb = orbit_mod(phi, 3, m)
        reduced = {(r.c1, r.c2) for r in (reduce_mod(t, m) for t in targets)}
        hs = hit_set(orb, targets)
        horizon = 3 * (orb.tail + orb.cycle)
        for n in range(horizon + 1):
            rp = orb.point_at(n)
            assert hs.contains(n) == ((rp.c1, rp.c2) in reduced), (str(m), n)


def test_hit_set_validation():
    with pytest.raises(ValueError):
        HitSet(0, frozenset(), 2, ResidueClassSet(3, ()))
    with pytest.raises(ValueError):
        HitSet(1, frozenset({2}), 2, ResidueClassSet(2, ()))
    hs = HitSet(0, frozenset(), 1, ResidueClassSet(1, ()))
    with pytest.raises(ValueError):
        hs.contains(-1)
