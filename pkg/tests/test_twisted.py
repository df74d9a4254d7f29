import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reidemeister.errors import GroupMismatch, HypothesisViolated, NotClassPreserving, TrivialGroup
from reidemeister.groups import center, central_subgroups, parse_builtin
from reidemeister.morphisms import (
    Endomorphism,
    compose,
    enumerate_automorphisms,
    enumerate_endomorphisms,
    from_generator_images,
    identity,
    inner,
    is_class_preserving,
    make_endomorphism,
    power,
    trivial,
)
from reidemeister.twisted import (
    METHODS,
    R,
    UnionFind,
    check_central_bounds,
    check_class_preserving_invariance,
    check_gap_theorem,
    check_power_inequality,
    check_symmetry_equalities,
    reidemeister_number,
    reidemeister_spectrum,
    reidemeister_via_xi,
    smallest_prime_divisor,
    stabilizer,
    transporter_count,
    twisted_action,
    twisted_classes,
    xi_map,
)


def brute_orbits(G, phi, psi):
    """Twisted classes by acting with every element, in plain python."""
    T = G.mul.tolist()
    inv = G.inv.tolist()
    seen, classes = set(), []
    for h in range(G.order):
        if h in seen:
            continue
        orbit = {T[T[int(phi(g))][h]][inv[int(psi(g))]] for g in range(G.order)}
        seen |= orbit
        classes.append(orbit)
    return classes


def abelian_count(G, phi, psi):
    # on an abelian group the classes are cosets of the image of g -> phi(g) psi(g)^-1
    img = {int(G.mul[phi(g), G.inv[psi(g)]]) for g in range(G.order)}
    return G.order // len(img)


def order32_psi(G):
    return from_generator_images(G, {G.index_of("x"): G.index_of("x"),
                                     G.index_of("y"): G.index_of("x^6*y"),
                                     G.index_of("z"): G.index_of("z")})


@pytest.mark.parametrize("uri", ["builtin:symmetric:3", "builtin:dihedral:4", "builtin:dicyclic:2",
                                 "builtin:alternating:4", "builtin:frobenius21"])
def test_all_methods_match_brute_orbits(uri):
    G = parse_builtin(uri)
    ends = list(enumerate_endomorphisms(G))
    for phi, psi in itertools.islice(itertools.product(ends, ends), 400):
        brute = len(brute_orbits(G, phi, psi))
        for m in METHODS:
            assert reidemeister_number(G, phi, psi, method=m) == brute, (m, phi, psi)


@pytest.mark.parametrize("uri", ["builtin:abelian:4,2", "builtin:cyclic:9", "builtin:abelian:3,3"])
def test_abelian_cokernel_oracle(uri):
    G = parse_builtin(uri)
    ends = list(enumerate_endomorphisms(G))
    for phi, psi in itertools.islice(itertools.product(ends, ends), 600):
        assert R(psi, phi) == abelian_count(G, phi, psi)


def test_partition_matches_brute(paper32):
    psi = order32_psi(paper32)
    part = twisted_classes(paper32, identity(paper32), psi)
    brute = brute_orbits(paper32, identity(paper32), psi)
    assert sorted(sorted(part.members(c)) for c in range(len(part))) == sorted(sorted(o) for o in brute)
    assert sorted(part.class_sizes) == [2] * 6 + [4] * 5
    assert all(r == min(part.members(c)) for c, r in enumerate(part.representatives))


def test_paper32_all_routes(paper32):
    G = paper32
    psi = order32_psi(G)
    ident = identity(G)
    for m in METHODS:
        assert reidemeister_number(G, ident, psi, method=m) == 11
    for k in (0, 1, 3):
        assert reidemeister_via_xi(G, power(psi, k), psi) == 11


def test_trivial_examples():
    C3 = parse_builtin("builtin:cyclic:3")
    inv = make_endomorphism(C3, [0, 2, 1])
    assert R(inv) == 1
    for uri in ("builtin:symmetric:4", "builtin:cyclic:1", "builtin:dicyclic:3"):
        G = parse_builtin(uri)
        assert R(identity(G)) == len(G.conjugacy)
    G = parse_builtin("builtin:symmetric:3")
    assert R(trivial(G)) == 1  # Fix(trivial) = {1}


def test_spectra():
    assert reidemeister_spectrum(parse_builtin("builtin:cyclic:3")).multiplicities == {1: 1, 3: 1}
    assert reidemeister_spectrum(parse_builtin("builtin:cyclic:2")).multiplicities == {2: 1}
    S3 = parse_builtin("builtin:symmetric:3")
    spec = reidemeister_spectrum(S3, scope="End")
    brute = Counter(len(brute_orbits(S3, identity(S3), e)) for e in enumerate_endomorphisms(S3))
    assert spec.multiplicities == dict(brute)
    assert sum(spec.multiplicities.values()) == 10


def test_paper32_aut_spectrum(paper32):
    assert reidemeister_spectrum(paper32).multiplicities == {7: 32, 11: 32}


def test_method_errors():
    G = parse_builtin("builtin:cyclic:3")
    H = parse_builtin("builtin:cyclic:3")
    with pytest.raises(ValueError):
        reidemeister_number(G, identity(G), identity(G), method="magic")
    with pytest.raises(GroupMismatch):
        reidemeister_number(G, identity(H), identity(G))


def test_union_find_roots_are_minimal():
    uf = UnionFind(6)
    uf.union(5, 3)
    uf.union(3, 4)
    uf.union(1, 2)
    assert uf.find(4) == 3 and uf.find(5) == 3 and uf.find(2) == 1


def test_stabilizer_and_transporter():
    G = parse_builtin("builtin:dihedral:4")
    ends = list(enumerate_endomorphisms(G))
    act = None
    for phi, psi in [(ends[3], ends[7]), (identity(G), ends[5])]:
        act = twisted_action(G, phi, psi)
        part = twisted_classes(G, phi, psi)
        for c, x in enumerate(part.representatives):
            stab = stabilizer(G, phi, psi, x)
            assert len(stab) * part.class_sizes[c] == G.order
            for y in part.members(c):
                assert transporter_count(G.elements, act, x, y) == len(stab)
        if len(part) > 1:
            assert transporter_count(G.elements, act, part.representatives[0], part.representatives[1]) == 0


def test_xi_hypotheses():
    S3 = parse_builtin("builtin:symmetric:3")
    t = inner(S3, S3.index_of("(1 2)"))
    u = inner(S3, S3.index_of("(1 3)"))
    with pytest.raises(HypothesisViolated):
        xi_map(S3, t, u)  # these two do not commute
    C4 = parse_builtin("builtin:cyclic:4")
    # with psi = id on an abelian group the classes are singletons, so g ~ -g fails
    neg = make_endomorphism(C4, [0, 3, 2, 1])
    with pytest.raises(HypothesisViolated):
        xi_map(C4, neg, identity(C4))
    xi = xi_map(C4, identity(C4), neg)
    assert len(xi.fixed) == R(neg)


def test_symmetry_and_class_preserving(paper32):
    G = paper32
    auts = list(enumerate_automorphisms(G))
    ends = list(enumerate_endomorphisms(G))[::97]
    cps = [a for a in auts if is_class_preserving(a)]
    for i, (phi, psi) in enumerate(itertools.product(ends, ends)):
        assert check_symmetry_equalities(G, phi, psi, inner(G, i % 32), auts[i % 64])
        assert check_class_preserving_invariance(G, phi, psi, cps[i % len(cps)])
    with pytest.raises(NotClassPreserving):
        non_cp = next(a for a in auts if not is_class_preserving(a))
        check_class_preserving_invariance(G, ends[0], ends[1], non_cp)


def test_power_inequality_examples():
    G = parse_builtin("builtin:cyclic:7")
    psi = make_endomorphism(G, [(3 * g) % 7 for g in range(7)])
    for k in range(1, 13):
        rep = check_power_inequality(G, psi, k)
        assert rep.holds, rep.values
    assert check_power_inequality(G, psi, 6).values["R(psi^k)"] == 7  # psi^6 = id
    assert check_power_inequality(G, psi, 5).values.get("equality_expected")


def test_central_bounds(paper32):
    G = paper32
    psi = order32_psi(G)
    for C in central_subgroups(G):
        rep = check_central_bounds(G, C, identity(G), psi)
        assert rep.holds, rep.values
    D4 = parse_builtin("builtin:dihedral:4")
    Z = center(D4)
    for phi in list(enumerate_endomorphisms(D4))[:10]:
        for psi in list(enumerate_endomorphisms(D4))[:10]:
            if Z.mask[phi.image[list(Z.elements)]].all() and Z.mask[psi.image[list(Z.elements)]].all():
                assert check_central_bounds(D4, Z, phi, psi)


def test_gap_theorem_small_groups():
    for uri in ("builtin:symmetric:3", "builtin:dihedral:4", "builtin:cyclic:6", "builtin:dicyclic:2"):
        G = parse_builtin(uri)
        ends = list(enumerate_endomorphisms(G))
        for phi, psi in itertools.product(ends, ends):
            assert check_gap_theorem(G, phi, psi)
    C2 = parse_builtin("builtin:cyclic:2")
    rep = check_gap_theorem(C2, identity(C2), identity(C2))
    assert rep.values["R_is_order"] and rep.values["above_bound"]
    with pytest.raises(TrivialGroup):
        G1 = parse_builtin("builtin:cyclic:1")
        check_gap_theorem(G1, identity(G1), identity(G1))


def test_smallest_prime_divisor():
    assert [smallest_prime_divisor(n) for n in (2, 9, 15, 21, 32, 49, 97)] == [2, 3, 3, 3, 2, 7, 97]


def test_parity_on_odd_order():
    for uri in ("builtin:frobenius21", "builtin:heisenberg:3", "builtin:cyclic:15"):
        G = parse_builtin(uri)
        ends = list(enumerate_endomorphisms(G))[:30]
        for phi, psi in itertools.product(ends, ends):
            assert R(psi, phi) % 2 == 1


_AUT_CACHE = {}


def _auts(uri):
    if uri not in _AUT_CACHE:
        G = parse_builtin(uri)
        _AUT_CACHE[uri] = (G, list(enumerate_automorphisms(G)))
    return _AUT_CACHE[uri]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["builtin:paper32", "builtin:symmetric:4", "builtin:dicyclic:2"]), st.data())
def test_bitwisted_reduces_to_single_twist(uri, data):
    # R(phi, psi) = R(phi^-1 psi) for automorphisms
    G, auts = _auts(uri)
    phi = data.draw(st.sampled_from(auts))
    psi = data.draw(st.sampled_from(auts))
    phi_inv = Endomorphism(G, np.argsort(phi.image))
    assert R(psi, phi) == R(compose(phi_inv, psi))
