"""Bi-twisted conjugacy classes and Reidemeister numbers.

The action of G on itself is ``g . h = phi(g) h psi(g)^-1``.  Its orbits are
the (phi, psi)-twisted classes and their number is R(phi, psi).  Four
independent counts are provided:

``orbits``
    union-find over the action of a generating set (the reference oracle);
``burnside``
    average number of fixed points of the action;
``class_sum``
    sum over ordinary classes [g] with [phi(g)] = [psi(g)] of |[g]|/|[phi(g)]|;
``characters``
    sum over irreducible characters of <chi o phi, chi o psi>.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from . import chartab
from .errors import (
    EnumerationCapExceeded,
    GroupMismatch,
    HypothesisViolated,
    NonIntegerSum,
    NotClassPreserving,
    NotCentral,
    TrivialGroup,
)
from .groups import FiniteGroup, Subgroup, center
from .morphisms import (
    Endomorphism,
    automorphism_order,
    compose,
    enumerate_automorphisms,
    enumerate_endomorphisms,
    identity,
    induce_on_quotient,
    is_class_preserving,
    power,
    restrict_to_subgroup,
)

METHODS = ("orbits", "burnside", "class_sum", "characters")


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # keep the smaller index as root
            if rx < ry:
                self.parent[ry] = rx
            else:
                self.parent[rx] = ry


@dataclass(frozen=True)
class TwistedClassPartition:
    class_of: tuple[int, ...]
    representatives: tuple[int, ...]
    class_sizes: tuple[int, ...]
    method: str = "orbits"

    def __len__(self):
        return len(self.representatives)

    def members(self, c: int) -> list[int]:
        return [g for g, k in enumerate(self.class_of) if k == c]


@dataclass(frozen=True)
class SpectrumResult:
    spectrum: tuple[int, ...]
    multiplicities: dict
    scope: str


@dataclass
class CheckReport:
    """Outcome of one identity or inequality check, with the numbers involved."""

    name: str
    holds: bool
    values: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


def _group_of(G: FiniteGroup, *maps: Endomorphism) -> FiniteGroup:
    for m in maps:
        if m.group is not G:
            raise GroupMismatch(f"endomorphism of {m.group.name} used with {G.name}")
    return G


def action_permutations(G: FiniteGroup, phi: Endomorphism, psi: Endomorphism,
                        gens: Iterable[int] | None = None) -> list[np.ndarray]:
    """For each generator g, the permutation h -> phi(g) h psi(g)^-1 of G."""
    gens = G.generators if gens is None else gens
    return [G.mul[G.mul[phi.image[g], :], G.inv[psi.image[g]]] for g in gens]


def twisted_classes(G: FiniteGroup, phi: Endomorphism, psi: Endomorphism) -> TwistedClassPartition:
    """Orbits of the twisted action, with least-index representatives."""
    _group_of(G, phi, psi)
    uf = UnionFind(G.order)
    for perm in action_permutations(G, phi, psi):
        for h, k in enumerate(perm.tolist()):
            uf.union(h, k)
    roots = [uf.find(h) for h in range(G.order)]
    index: dict[int, int] = {}
    class_of, sizes = [], []
    for r in roots:
        if r not in index:
            index[r] = len(index)
            sizes.append(0)
        c = index[r]
        class_of.append(c)
        sizes[c] += 1
    reps = tuple(sorted(index))  # roots are least elements of their orbits
    return TwistedClassPartition(tuple(class_of), reps, tuple(sizes), "orbits")


def _count_orbits(G, phi, psi) -> int:
    uf = UnionFind(G.order)
    for perm in action_permutations(G, phi, psi):
        for h, k in enumerate(perm.tolist()):
            uf.union(h, k)
    return sum(1 for h in range(G.order) if uf.find(h) == h)


def _count_burnside(G, phi, psi) -> int:
    # fixed points of g: phi(g) x = x psi(g)
    fixed = int((G.mul[phi.image, :] == G.mul[:, psi.image].T).sum())
    if fixed % G.order:
        raise NonIntegerSum(f"Burnside total {fixed} not divisible by {G.order}")
    return fixed // G.order


def _count_class_sum(G, phi, psi) -> int:
    cc = G.conjugacy
    reps = np.array(cc.representatives)
    cphi = cc.class_of[phi.image[reps]]
    cpsi = cc.class_of[psi.image[reps]]
    total = Fraction(0)
    for c in np.nonzero(cphi == cpsi)[0].tolist():
        total += Fraction(cc.class_sizes[c], cc.class_sizes[cphi[c]])
    if total.denominator != 1:
        raise NonIntegerSum(f"class sum {total} is not an integer")
    return int(total)


def reidemeister_number(G: FiniteGroup, phi: Endomorphism, psi: Endomorphism,
                        method: str = "orbits") -> int:
    """Number of (phi, psi)-twisted conjugacy classes, by the chosen method."""
    _group_of(G, phi, psi)
    if method == "orbits":
        return _count_orbits(G, phi, psi)
    if method == "burnside":
        return _count_burnside(G, phi, psi)
    if method == "class_sum":
        return _count_class_sum(G, phi, psi)
    if method == "characters":
        return chartab.reidemeister_via_characters(G, phi, psi)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def R(psi: Endomorphism, phi: Endomorphism | None = None) -> int:
    """Shorthand: R(psi) = R(id, psi), or R(phi, psi) when phi is given."""
    G = psi.group
    return _count_orbits(G, identity(G) if phi is None else phi, psi)


def stabilizer(G: FiniteGroup, phi: Endomorphism, psi: Endomorphism, x: int) -> tuple[int, ...]:
    _group_of(G, phi, psi)
    moved = G.mul[G.mul[phi.image, x], G.inv[psi.image]]
    return tuple(int(g) for g in np.nonzero(moved == x)[0])


def transporter_count(elements: Iterable, action: Callable, x, y) -> int:
    """#{h : action(h, x) = y} for a finite group action given as a function."""
    return sum(1 for h in elements if action(h, x) == y)


def twisted_action(G: FiniteGroup, phi: Endomorphism, psi: Endomorphism) -> Callable[[int, int], int]:
    mul, inv = G.mul, G.inv
    return lambda g, h: int(mul[mul[phi.image[g], h], inv[psi.image[g]]])


# fixed classes of the induced map on twisted classes

@dataclass(frozen=True)
class XiMap:
    """[g]_phi -> [psi(g)]_phi on the phi-twisted classes."""

    partition: TwistedClassPartition
    mapping: tuple[int, ...]

    @property
    def fixed(self) -> tuple[int, ...]:
        return tuple(c for c, d in enumerate(self.mapping) if c == d)


def xi_map(G: FiniteGroup, phi: Endomorphism, psi: Endomorphism) -> XiMap:
    """Check the commuting and twisted-conjugacy hypotheses, then build the map."""
    _group_of(G, phi, psi)
    if not np.array_equal(phi.image[psi.image], psi.image[phi.image]):
        raise HypothesisViolated("phi and psi do not commute")
    by_psi = twisted_classes(G, identity(G), psi).class_of
    for g in range(G.order):
        if by_psi[g] != by_psi[phi.image[g]]:
            raise HypothesisViolated(f"g={g} is not psi-twisted conjugate to phi(g)")
    part = twisted_classes(G, identity(G), phi)
    mapping = [-1] * len(part)
    for g in range(G.order):
        c, d = part.class_of[g], part.class_of[psi.image[g]]
        if mapping[c] == -1:
            mapping[c] = d
        elif mapping[c] != d:
            raise HypothesisViolated(f"map on twisted classes is not well defined at g={g}")
    return XiMap(part, tuple(mapping))


def reidemeister_via_xi(G: FiniteGroup, phi: Endomorphism, psi: Endomorphism) -> int:
    """R(psi) as the number of phi-twisted classes fixed by [g] -> [psi(g)]."""
    return len(xi_map(G, phi, psi).fixed)


# spectra

def reidemeister_spectrum(G: FiniteGroup, scope: str = "Aut", cap: int = 100_000) -> SpectrumResult:
    if scope not in ("Aut", "End"):
        raise ValueError("scope must be 'Aut' or 'End'")
    maps = enumerate_automorphisms(G) if scope == "Aut" else enumerate_endomorphisms(G)
    ident = identity(G)
    counts: dict[int, int] = {}
    for i, psi in enumerate(maps):
        if i >= cap:
            raise EnumerationCapExceeded(i + 1, cap)
        r = _count_orbits(G, ident, psi)
        counts[r] = counts.get(r, 0) + 1
    counts = dict(sorted(counts.items()))
    return SpectrumResult(tuple(counts), counts, scope)


# identities and inequalities

def check_symmetry_equalities(G, phi, psi, iota, xi) -> CheckReport:
    """R(phi,psi) = R(psi,phi) = R(iota phi, psi) = R(xi phi, xi psi)."""
    base = _count_orbits(G, phi, psi)
    vals = {
        "R(phi,psi)": base,
        "R(psi,phi)": _count_orbits(G, psi, phi),
        "R(iota phi,psi)": _count_orbits(G, compose(iota, phi), psi),
        "R(xi phi,xi psi)": _count_orbits(G, compose(xi, phi), compose(xi, psi)),
    }
    return CheckReport("symmetry_equalities", len(set(vals.values())) == 1, vals)


def check_class_preserving_invariance(G, phi, psi, xi) -> CheckReport:
    if not is_class_preserving(xi):
        raise NotClassPreserving(f"{xi!r} is not class-preserving")
    vals = {
        "R(phi,psi)": _count_orbits(G, phi, psi),
        "R(xi phi,psi)": _count_orbits(G, compose(xi, phi), psi),
        "R(phi xi,psi)": _count_orbits(G, compose(phi, xi), psi),
        "R(phi,xi psi)": _count_orbits(G, phi, compose(xi, psi)),
        "R(phi,psi xi)": _count_orbits(G, phi, compose(psi, xi)),
    }
    return CheckReport("class_preserving_invariance", len(set(vals.values())) == 1, vals)


def check_power_inequality(G, psi, k: int) -> CheckReport:
    """R(psi^k) >= R(psi), with equality for automorphisms when gcd(k, ord psi) = 1."""
    ident = identity(G)
    r1 = _count_orbits(G, ident, psi)
    rk = _count_orbits(G, ident, power(psi, k))
    vals = {"k": k, "R(psi)": r1, "R(psi^k)": rk}
    holds = rk >= r1
    if psi.is_bijective:
        n = automorphism_order(psi)
        vals["order"] = n
        if math.gcd(k, n) == 1:
            vals["equality_expected"] = True
            holds = holds and rk == r1
    return CheckReport("power_inequality", holds, vals)


def check_central_bounds(G, C: Subgroup, phi, psi) -> CheckReport:
    """R(phi|C, psi|C) <= R(phi, psi) <= R(phi|C, psi|C) R(phi_bar, psi_bar)."""
    Z = center(G)
    if not all(c in Z for c in C.elements):
        raise NotCentral(f"subgroup of order {C.order} is not central")
    phi_c, psi_c = restrict_to_subgroup(phi, C), restrict_to_subgroup(psi, C)
    phi_q, psi_q = induce_on_quotient(phi, C), induce_on_quotient(psi, C)
    r_c = _count_orbits(phi_c.group, phi_c, psi_c)
    r_q = _count_orbits(phi_q.group, phi_q, psi_q)
    r = _count_orbits(G, phi, psi)
    vals = {"|C|": C.order, "R_C": r_c, "R": r, "R_quotient": r_q}
    return CheckReport("central_bounds", r_c <= r <= r_c * r_q, vals)


def smallest_prime_divisor(n: int) -> int:
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            return p
    return n


def check_gap_theorem(G, phi, psi, r: int | None = None) -> CheckReport:
    """R > (2p-1)/p^2 |G|  <=>  phi = psi with central image  <=>  R = |G|."""
    if G.order == 1:
        raise TrivialGroup("the gap statement needs a non-trivial group")
    if r is None:
        r = _count_orbits(G, phi, psi)
    p = smallest_prime_divisor(G.order)
    above = r * p * p > (2 * p - 1) * G.order
    central = bool(np.array_equal(phi.image, psi.image) and center(G).mask[phi.image].all())
    full = r == G.order
    vals = {"R": r, "p": p, "above_bound": above, "equal_central": central, "R_is_order": full}
    return CheckReport("gap_theorem", above == central == full, vals)
