import json

import numpy as np
import pytest

from reidemeister import chartab
from reidemeister.cyclotomic import Cyclotomic, field
from reidemeister.errors import GroupMismatch, NotAutomorphism
from reidemeister.groups import parse_builtin
from reidemeister.morphisms import (
    compose,
    enumerate_automorphisms,
    enumerate_endomorphisms,
    from_generator_images,
    identity,
    make_endomorphism,
    trivial,
)

TABLE_GROUPS = [
    "builtin:cyclic:1", "builtin:cyclic:2", "builtin:cyclic:3", "builtin:cyclic:16",
    "builtin:symmetric:3", "builtin:symmetric:4", "builtin:alternating:4", "builtin:alternating:5",
    "builtin:dihedral:4", "builtin:dicyclic:2", "builtin:dicyclic:3", "builtin:abelian:2,2,2,2",
    "builtin:heisenberg:3", "builtin:frobenius21", "builtin:paper32", "builtin:dihedral:4*cyclic:2",
]


def irreducibility_defect(G, chi):
    """max |chi(g)chi(h) - chi(1)/|G| sum_x chi(g x h x^-1)| over class representatives.

    The functional equation characterises irreducible characters among class
    functions with chi(1) > 0, independently of any table construction.
    """
    cc = G.conjugacy
    vals = chi[cc.class_of]
    reps = cc.representatives
    worst = 0.0
    for g in reps:
        for h in reps:
            conj_h = G.mul[G.mul[:, h], G.inv]           # x h x^-1 for every x
            s = vals[G.mul[g, conj_h]].sum()
            worst = max(worst, abs(vals[g] * vals[h] - chi[0] / G.order * s))
    return worst


@pytest.mark.parametrize("uri", TABLE_GROUPS)
def test_rows_are_irreducible_characters(uri):
    G = parse_builtin(uri)
    table = chartab.character_table(G)
    C = table.to_complex()
    assert len(table) == len(G.conjugacy)
    assert sum(d * d for d in table.degrees) == G.order
    assert chartab.check_table(table) == []
    for row in C:
        assert irreducibility_defect(G, row) < 1e-8
    # distinct rows
    assert len({tuple(np.round(r, 8)) for r in C}) == len(C)
    assert table.degrees[0] == 1 and all(v == 1 for v in C[0])


def test_cyclic_two_and_three_exact():
    C2 = chartab.character_table(parse_builtin("builtin:cyclic:2"))
    assert C2.values[:, :, 0].tolist() == [[1, 1], [1, -1]]
    C3 = chartab.character_table(parse_builtin("builtin:cyclic:3"))
    w = field(3).zeta()
    rows = [[C3.row(i)[c] for c in range(3)] for i in range(3)]
    assert rows[0] == [1, 1, 1]
    assert sorted([rows[1], rows[2]], key=lambda r: r[1].coeffs) == \
        sorted([[1, w, w * w], [1, w * w, w]], key=lambda r: r[1].coeffs)


def test_trivial_group_table():
    table = chartab.character_table(parse_builtin("builtin:cyclic:1"))
    assert table.values.shape[:2] == (1, 1) and table.degrees == (1,)


def test_s3_exact():
    G = parse_builtin("builtin:symmetric:3")
    table = chartab.character_table(G)
    # classes ordered by least element: identity, then whichever comes first
    by_size = {s: c for c, s in enumerate(G.conjugacy.class_sizes)}
    T = table.values[:, :, 0]
    assert table.degrees == (1, 1, 2)
    assert T[1, by_size[3]] == -1 and T[1, by_size[2]] == 1
    assert T[2, by_size[3]] == 0 and T[2, by_size[2]] == -1


def test_a5_irrational_entries():
    table = chartab.character_table(parse_builtin("builtin:alternating:5"))
    C = table.to_complex()
    golden = (1 + 5 ** 0.5) / 2
    degree3 = [r for r in C if abs(r[0] - 3) < 1e-9]
    assert len(degree3) == 2
    for r in degree3:
        assert any(abs(v - golden) < 1e-9 for v in r)
        assert any(abs(v - (1 - golden)) < 1e-9 for v in r)
    assert table.degrees == (1, 3, 3, 4, 5)


def test_paper32_degrees(paper32):
    table = chartab.character_table(paper32)
    assert chartab.degree_count(table) == {1: 8, 2: 2, 4: 1}


def test_dixon_prime():
    # p = 1 mod e and p^2 > 4|G|
    assert chartab.dixon_prime(60, 30) == 31
    assert chartab.dixon_prime(6, 6) == 7
    assert chartab.dixon_prime(32, 8) == 17


def test_structure_constants_count_products():
    G = parse_builtin("builtin:symmetric:3")
    cc = G.conjugacy
    a = chartab.class_structure_constants(G)
    for r in range(3):
        for s in range(3):
            for t in range(3):
                z = cc.representatives[t]
                brute = sum(1 for x in cc.members[r] if cc.class_of[G.op(int(G.inv[x]), z)] == s)
                assert a[r, s, t] == brute


def order32_psi(G):
    return from_generator_images(G, {G.index_of("x"): G.index_of("x"),
                                     G.index_of("y"): G.index_of("x^6*y"),
                                     G.index_of("z"): G.index_of("z")})


@pytest.mark.parametrize("uri", ["builtin:symmetric:3", "builtin:dihedral:4", "builtin:paper32",
                                 "builtin:frobenius21"])
def test_theta_identities_on_all_small_pairs(uri):
    G = parse_builtin(uri)
    ends = list(enumerate_endomorphisms(G))[:24]
    table = chartab.character_table(G)
    for phi in ends[:8]:
        for psi in ends:
            direct = chartab.theta_direct(G, phi, psi, audit=4, seed=1)
            assert chartab.theta_from_characters(G, phi, psi) == direct
            assert direct.coeffs[:, 0].tolist() == chartab.theta_literal(G, phi, psi).tolist()
            mult = chartab.theta_multiplicities(G, phi, psi)
            for chi, m in zip(table.rows, mult):
                assert chartab.inner_product(direct, chi) == m.to_rational()


def test_theta_literal_by_hand():
    G = parse_builtin("builtin:cyclic:4")
    phi = identity(G)
    psi = make_endomorphism(G, [0, 3, 2, 1])
    lit = chartab.theta_literal(G, phi, psi)
    for c, g in enumerate(G.conjugacy.representatives):
        brute = sum(1 for x in range(4) if G.op(G.op(phi(g), x), int(G.inv[psi(g)])) == x)
        assert lit[c] == brute


def test_reidemeister_via_characters(paper32):
    psi = order32_psi(paper32)
    assert chartab.reidemeister_via_characters(paper32, identity(paper32), psi) == 11
    assert chartab.dual_coincidence_count(identity(paper32), psi) == 11


def test_dual_map_contravariant():
    G = parse_builtin("builtin:dihedral:4")
    auts = list(enumerate_automorphisms(G))
    for a in auts:
        for b in auts:
            da, db, dab = chartab.dual_map(a), chartab.dual_map(b), chartab.dual_map(compose(a, b))
            assert all(dab[i] == db[da[i]] for i in range(len(da)))
    with pytest.raises(NotAutomorphism):
        chartab.dual_map(trivial(G))


def test_regular_character_criterion():
    C3 = parse_builtin("builtin:cyclic:3")
    inv = make_endomorphism(C3, [0, 2, 1])
    assert chartab.is_regular_character(chartab.theta_direct(C3, identity(C3), inv))
    assert not chartab.is_regular_character(chartab.theta_direct(C3, identity(C3), identity(C3)))
    reg = chartab.regular_character(C3)
    assert chartab.inner_product(reg, reg) == 3


@pytest.mark.parametrize("uri,blocked", [
    ("builtin:symmetric:3", True),
    ("builtin:cyclic:2", True),
    ("builtin:cyclic:3", False),
    ("builtin:abelian:2,2", False),
    ("builtin:alternating:5", True),
])
def test_fpf_obstruction(uri, blocked):
    G = parse_builtin(uri)
    assert chartab.fpf_obstruction(G) is blocked
    if blocked:
        assert not any(a.is_bijective and (a.image == np.arange(G.order)).sum() == 1
                       for a in enumerate_automorphisms(G))


def test_inner_product_requires_same_group():
    a = chartab.trivial_character(parse_builtin("builtin:cyclic:2"))
    b = chartab.trivial_character(parse_builtin("builtin:cyclic:3"))
    with pytest.raises(GroupMismatch):
        chartab.inner_product(a, b)


def test_export_roundtrip(tmp_path):
    G = parse_builtin("builtin:alternating:4")
    table = chartab.character_table(G)
    path = tmp_path / "a4.json"
    path.write_text(json.dumps(chartab.export_table(table)))
    back = chartab.load_table(json.loads(path.read_text()), G)
    assert np.array_equal(back.values, table.values)
    assert chartab.check_table(back) == []


def test_class_function_access():
    G = parse_builtin("builtin:cyclic:4")
    chi = chartab.character_table(G).row(1)
    assert isinstance(chi[1], Cyclotomic)
    assert chi.at_element(0) == 1
    prod = chi * chi.conjugate()
    assert all(v == 1 for v in prod.values)
