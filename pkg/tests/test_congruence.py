import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reidemeister import congruence
from reidemeister.congruence import (
    EULER_PHI,
    MOEBIUS,
    STANDARD_THETAS,
    ArithmeticFunction,
    divisors,
    dold_sum,
    euler_phi,
    fixed_point_counts,
    gauss_congruence,
    jordan,
    jordan_totient,
    moebius,
    periodic_point_partition,
    prime_power_congruence,
    reidemeister_power_sequence,
    verify_theta_condition,
)
from reidemeister.errors import NotPrime, ThetaConditionViolated
from reidemeister.groups import parse_builtin
from reidemeister.morphisms import enumerate_endomorphisms, from_generator_images, identity, make_endomorphism


def brute_phi(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def brute_mu(n):
    primes, m, p = [], n, 2
    while m > 1:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            primes.append(p)
        else:
            p += 1
    return (-1) ** len(primes)


def brute_jordan(k, n):
    # number of k-tuples in [1..n]^k with gcd(tuple, n) = 1
    if k == 2:
        return sum(1 for a in range(1, n + 1) for b in range(1, n + 1) if math.gcd(math.gcd(a, b), n) == 1)
    raise NotImplementedError


def test_arithmetic_functions_against_definitions():
    for n in range(1, 80):
        assert euler_phi(n) == brute_phi(n)
        assert moebius(n) == brute_mu(n)
        assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]
    for n in range(1, 30):
        assert jordan_totient(2, n) == brute_jordan(2, n)
        assert jordan_totient(1, n) == euler_phi(n)
    assert (euler_phi(6), moebius(12), moebius(30), jordan_totient(2, 4)) == (2, 0, -1, 12)


def test_theta_condition():
    for theta in STANDARD_THETAS:
        assert verify_theta_condition(theta, 60).holds
    identity_fn = ArithmeticFunction("n", lambda n: n)
    assert verify_theta_condition(identity_fn, 6).violations[:3] == (2, 3, 4)


def test_periodic_points_of_a_three_cycle():
    assert periodic_point_partition([1, 2, 0], 3) == {1: 0, 3: 3}
    assert fixed_point_counts([1, 2, 0], 3) == [0, 0, 3]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=39), min_size=1, max_size=40), st.integers(1, 12))
def test_fixed_point_sequences_satisfy_congruences(raw, n):
    size = len(raw)
    f = [v % size for v in raw]
    fixes = fixed_point_counts(f, n)
    for theta in STANDARD_THETAS:
        assert dold_sum(lambda d: fixes[d - 1], n, theta).holds
    # moebius inversion recovers the number of points of least period n
    parts = periodic_point_partition(f, n)
    assert dold_sum(lambda d: fixes[d - 1], n, MOEBIUS).total == parts[n]
    assert sum(parts.values()) == fixes[n - 1]


def test_seeded_random_maps():
    rng = random.Random(7)
    for _ in range(100):
        size = rng.randint(1, 40)
        f = [rng.randrange(size) for _ in range(size)]
        fixes = fixed_point_counts(f, 12)
        for n in range(1, 13):
            assert dold_sum(lambda d: fixes[d - 1], n, EULER_PHI).holds


def test_group_sequences(paper32):
    psi = from_generator_images(paper32, {paper32.index_of("x"): paper32.index_of("x"),
                                          paper32.index_of("y"): paper32.index_of("x^6*y"),
                                          paper32.index_of("z"): paper32.index_of("z")})
    seq = reidemeister_power_sequence(psi, 12)
    assert seq[0] == 11 and seq[3] == 11  # psi^4 = id
    for theta in STANDARD_THETAS:
        for n in range(1, 13):
            assert gauss_congruence(paper32, psi, n, theta, sequence=seq).holds
    for p in (2, 3, 5, 7):
        assert prime_power_congruence(paper32, psi, p).holds


def test_every_endomorphism_of_small_groups():
    for uri in ("builtin:symmetric:3", "builtin:dihedral:4", "builtin:abelian:3,3"):
        G = parse_builtin(uri)
        for psi in enumerate_endomorphisms(G):
            seq = reidemeister_power_sequence(psi, 8)
            for n in range(1, 9):
                assert gauss_congruence(G, psi, n, jordan(2), sequence=seq).holds


def test_errors():
    G = parse_builtin("builtin:cyclic:5")
    psi = make_endomorphism(G, [0, 2, 4, 1, 3])
    with pytest.raises(NotPrime):
        prime_power_congruence(G, psi, 4)
    with pytest.raises(ThetaConditionViolated):
        gauss_congruence(G, psi, 4, ArithmeticFunction("n", lambda n: n))
    assert congruence.class_map(identity(G)) == [0, 1, 2, 3, 4]
