"""Tests for support factorization and primitive prime divisors of the
terms phi^m(beta) - gamma."""

import pytest

from orbitsieve.projective import PrimePowerModulus, congruent_mod, normalize
from orbitsieve.ratmap import iterate_point, parse_map
from orbitsieve.zsigmondy import difference_support, primitive_divisors


def test_difference_support_known_values():
    sq = parse_map("z^2")
    term, factors = difference_support(sq, 2, 1, 2)
    assert term == 15
    assert factors == ((3, 1), (5, 1))
    term, factors = difference_support(sq, 2, 1, 3)
    assert term == 255
    assert factors == ((3, 1), (5, 1), (17, 1))
    term, factors = difference_support(parse_map("z^2-1"), 3, 0, 1)
    assert term == 8
    assert factors == ((2, 3),)


def test_difference_support_rejects_exact_hits():
    with pytest.raises(ValueError):
        difference_support(parse_map("z^2-1"), 0, -1, 1)


def test_fermat_primitive_divisors():
    run = primitive_divisors(parse_map("z^2"), 2, 1, 5)
    assert run.warnings == ()
    assert [sorted(r.primitive) for r in run.reports] == [
        [3],
        [5],
        [17],
        [257],
        [65537],
    ]
    assert [r.term_bits for r in run.reports] == [2, 4, 8, 16, 32]
    # classical cross check: the multiplicative order of 2 modulo the
    # primitive prime found at index m is exactly 2^m
    for report in run.reports:
        (q,) = report.primitive
        order = 1
        acc = 2 % q
        while acc != 1:
            acc = acc * acc % q  # order is a power of two here
            order *= 2
        assert order == 2 ** report.m, (report.m, q)


def test_excluded_primes_cannot_be_primitive():
    run = primitive_divisors(parse_map("z^2"), 2, 1, 2, excluded={5})
    assert sorted(run.reports[0].primitive) == [3]
    assert run.reports[1].primitive == frozenset()
    assert all(p != 5 for p, _ in run.reports[1].term_valuations)


def test_polynomial_type_target_warns_and_still_runs():
    # gamma = 0 is a totally ramified fixed point of z^2: the guarantee is
    # void, and indeed the support is stuck at {2} with nothing primitive
    # after the first index
    run = primitive_divisors(parse_map("z^2"), 2, 0, 4)
    assert any("polynomial type" in w for w in run.warnings)
    for report in run.reports:
        assert {p for p, _ in report.term_valuations} == {2}
        if report.m > 1:
            assert report.primitive == frozenset()


def test_non_preperiodic_gamma_warns():
    run = primitive_divisors(parse_map("z^2-1"), 3, 2, 2)
    assert any("preperiodic" in w for w in run.warnings)


def test_preperiodic_beta_warns():
    run = primitive_divisors(parse_map("z^2-1"), 0, 2, 2)
    assert any("beta is preperiodic" in w for w in run.warnings)


def test_primitive_divisor_soundness_recheck():
    # a primitive prime at index m must divide the m-th term and no earlier
    # one, where divisibility is the depth 1 congruence on P^1
    phi = parse_map("z^2-1")
    beta = normalize(3)
    gamma = normalize(0)
    run = primitive_divisors(phi, beta, gamma, 6)
    for report in run.reports:
        for q in report.primitive:
            m1 = PrimePowerModulus(q, 1)
            assert congruent_mod(iterate_point(phi, beta, report.m), gamma, m1)
            for earlier in range(1, report.m):
                assert not congruent_mod(
                    iterate_point(phi, beta, earlier), gamma, m1
                ), (q, report.m, earlier)


def test_support_agrees_with_modular_orbit_hits():
    # q is in the support of term m exactly when the orbit mod q hits the
    # reduced target at index m
    from orbitsieve.orbit import hit_set, orbit_mod

    phi = parse_map("z^2-1")
    run = primitive_divisors(phi, 3, 0, 5)
    support_by_m = {
        r.m: {p for p, _ in r.term_valuations} for r in run.reports
    }
    seen_primes = sorted(set().union(*support_by_m.values()))
    for q in seen_primes:
        if not phi.is_good_prime(q):
            continue
        hs = hit_set(orbit_mod(phi, 3, PrimePowerModulus(q, 1)), [normalize(0)])
        for m in range(1, 6):
            assert hs.contains(m) == (q in support_by_m[m]), (q, m)
