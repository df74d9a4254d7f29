"""Endomorphisms of finite groups, stored as full image tables."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    GroupMismatch,
    NotAutomorphism,
    NotGeneratingSet,
    NotHomomorphism,
    NotInvariant,
)
from .groups import FiniteGroup, Subgroup, quotient_by_central


class Endomorphism:
    """A homomorphism G -> G given by ``image[g]`` for every element index g."""

    __slots__ = ("group", "image", "_key")

    def __init__(self, group: FiniteGroup, image, *, validate: bool = True):
        img = np.array(image, dtype=np.int64)
        img.setflags(write=False)
        self.group = group
        self.image = img
        self._key = None
        if validate:
            _validate(group, img)

    def __call__(self, g):
        return self.image[g]

    def __eq__(self, other):
        return (
            isinstance(other, Endomorphism)
            and other.group is self.group
            and np.array_equal(other.image, self.image)
        )

    def __hash__(self):
        if self._key is None:
            self._key = self.image.tobytes()
        return hash(self._key)

    def __repr__(self):
        return f"Endomorphism({self.group.name}, {self.image.tolist()})"

    @property
    def is_bijective(self) -> bool:
        return len(np.unique(self.image)) == self.group.order

    def __matmul__(self, other: "Endomorphism") -> "Endomorphism":
        return compose(self, other)


def _validate(G: FiniteGroup, img: np.ndarray) -> None:
    n = G.order
    if img.shape != (n,):
        raise NotHomomorphism(-1, -1, f"image must have length {n}, got shape {img.shape}")
    if img.min() < 0 or img.max() >= n:
        raise NotHomomorphism(-1, -1, "image entries out of range")
    bad = np.argwhere(img[G.mul] != G.mul[np.ix_(img, img)])
    if len(bad):
        a, b = (int(v) for v in bad[0])
        raise NotHomomorphism(a, b)


@dataclass(frozen=True)
class MorphismClassification:
    is_automorphism: bool
    is_inner: bool
    is_class_preserving: bool
    is_fixed_point_free: bool
    order: int | None


def make_endomorphism(G: FiniteGroup, image) -> Endomorphism:
    return Endomorphism(G, image)


def identity(G: FiniteGroup) -> Endomorphism:
    return Endomorphism(G, np.arange(G.order), validate=False)


def trivial(G: FiniteGroup) -> Endomorphism:
    return Endomorphism(G, np.zeros(G.order, dtype=np.int64), validate=False)


def inner(G: FiniteGroup, h: int) -> Endomorphism:
    """The map x -> h x h^-1."""
    return Endomorphism(G, G.mul[G.mul[h, :], G.inv[h]], validate=False)


def _same_group(phi: Endomorphism, psi: Endomorphism) -> FiniteGroup:
    if phi.group is not psi.group:
        raise GroupMismatch(f"{phi.group.name} vs {psi.group.name}")
    return phi.group


def compose(phi: Endomorphism, psi: Endomorphism) -> Endomorphism:
    """phi o psi (apply psi first)."""
    G = _same_group(phi, psi)
    return Endomorphism(G, phi.image[psi.image], validate=False)


def power(psi: Endomorphism, k: int) -> Endomorphism:
    if k < 0:
        raise ValueError("power needs k >= 0")
    result = np.arange(psi.group.order)
    base = psi.image
    while k:
        if k & 1:
            result = base[result]
        base = base[base]
        k >>= 1
    return Endomorphism(psi.group, result, validate=False)


def fixed_points(psi: Endomorphism) -> tuple[int, ...]:
    return tuple(int(g) for g in np.nonzero(psi.image == np.arange(psi.group.order))[0])


def is_class_preserving(psi: Endomorphism) -> bool:
    c = psi.group.conjugacy.class_of
    return bool((c[psi.image] == c).all())


def is_inner(psi: Endomorphism) -> bool:
    G = psi.group
    # h x h^-1 = psi(x) for all x  <=>  h x = psi(x) h
    for h in range(G.order):
        if (G.mul[h, :] == G.mul[psi.image, h]).all():
            return True
    return False


def automorphism_order(psi: Endomorphism) -> int:
    if not psi.is_bijective:
        raise NotAutomorphism(f"{psi!r} is not bijective")
    ident = np.arange(psi.group.order)
    cur = psi.image
    n = 1
    while not np.array_equal(cur, ident):
        cur = psi.image[cur]
        n += 1
    return n


def classify(psi: Endomorphism) -> MorphismClassification:
    auto = psi.is_bijective
    return MorphismClassification(
        is_automorphism=auto,
        is_inner=is_inner(psi),
        is_class_preserving=is_class_preserving(psi),
        is_fixed_point_free=fixed_points(psi) == (0,),
        order=automorphism_order(psi) if auto else None,
    )


# generator-based construction and enumeration

def _spanning_tree(G: FiniteGroup, gens: Sequence[int]):
    """BFS order of <gens> with parent/generator links: elem = parent * gens[j]."""
    order = [0]
    parent = {0: (-1, -1)}
    i = 0
    while i < len(order):
        e = order[i]
        for j, g in enumerate(gens):
            f = int(G.mul[e, g])
            if f not in parent:
                parent[f] = (e, j)
                order.append(f)
        i += 1
    elems = np.array(order, dtype=np.int64)
    par = np.array([parent[e][0] for e in order[1:]], dtype=np.int64)
    via = np.array([parent[e][1] for e in order[1:]], dtype=np.int64)
    return elems, par, via


class _Extender:
    """Extends generator images to the subgroup they generate, level by level."""

    def __init__(self, G: FiniteGroup, gens: Sequence[int]):
        self.G = G
        self.gens = list(gens)
        self.levels = [_spanning_tree(G, self.gens[: i + 1]) for i in range(len(self.gens))]

    def extend(self, level: int, images: Sequence[int]):
        """Return the extended map on <gens[:level+1]> or None if ill defined."""
        G = self.G
        elems, par, via = self.levels[level]
        imgs = np.asarray(images[: level + 1], dtype=np.int64)
        f = np.full(G.order, -1, dtype=np.int64)
        f[0] = 0
        # BFS order guarantees parents come first
        for e, p, j in zip(elems[1:].tolist(), par.tolist(), via.tolist()):
            f[e] = G.mul[f[p], imgs[j]]
        gens = np.asarray(self.gens[: level + 1], dtype=np.int64)
        lhs = f[G.mul[np.ix_(elems, gens)]]
        rhs = G.mul[np.ix_(f[elems], imgs)]
        if not np.array_equal(lhs, rhs):
            return None
        return f


def from_generator_images(G: FiniteGroup, images: Mapping[int, int]) -> Endomorphism:
    """Extend an assignment generator -> image to a homomorphism of G."""
    gens = [G.index_of(g) for g in images]
    imgs = [G.index_of(v) for v in images.values()]
    _check_generating(G, gens)
    if not gens:
        return identity(G)
    f = _Extender(G, gens).extend(len(gens) - 1, imgs)
    if f is None:
        raise NotHomomorphism(-1, -1, f"generator images {dict(zip(gens, imgs))} do not extend to a homomorphism")
    return Endomorphism(G, f)


def _check_generating(G: FiniteGroup, gens) -> list[int]:
    gens = list(G.generators if gens is None else gens)
    elems, _, _ = _spanning_tree(G, gens)
    if len(elems) != G.order:
        raise NotGeneratingSet(f"{gens} generates a subgroup of order {len(elems)} in {G.name}")
    return gens


def _enumerate(G: FiniteGroup, gens, automorphisms: bool) -> Iterator[Endomorphism]:
    gens = _check_generating(G, gens)
    if not gens:
        yield identity(G)
        return
    orders = G.element_orders
    cands = []
    for g in gens:
        o = int(orders[g])
        if automorphisms:
            cands.append(np.nonzero(orders == o)[0].tolist())
        else:
            cands.append(np.nonzero(o % orders == 0)[0].tolist())
    ext = _Extender(G, gens)
    sizes = [len(level[0]) for level in ext.levels]
    images = [0] * len(gens)

    def rec(level):
        for c in cands[level]:
            images[level] = c
            f = ext.extend(level, images)
            if f is None:
                continue
            if automorphisms:
                part = f[ext.levels[level][0]]
                if len(np.unique(part)) != sizes[level]:
                    continue
            if level == len(gens) - 1:
                yield Endomorphism(G, f, validate=False)
            else:
                yield from rec(level + 1)

    yield from rec(0)


def enumerate_endomorphisms(G: FiniteGroup, generating_set=None) -> Iterator[Endomorphism]:
    """All endomorphisms, lexicographic in the generator-image indices."""
    return _enumerate(G, generating_set, automorphisms=False)


def enumerate_automorphisms(G: FiniteGroup, generating_set=None) -> Iterator[Endomorphism]:
    return _enumerate(G, generating_set, automorphisms=True)


# subgroups and quotients

def restrict_to_subgroup(psi: Endomorphism, C: Subgroup) -> Endomorphism:
    """psi restricted to an invariant subgroup, as an endomorphism of ``C.as_group``."""
    if C.parent is not psi.group:
        raise GroupMismatch("subgroup of a different group")
    elems = np.array(C.elements)
    img = psi.image[elems]
    if not C.mask[img].all():
        raise NotInvariant(f"psi does not map the subgroup of order {C.order} into itself")
    local = np.full(psi.group.order, -1, dtype=np.int64)
    local[elems] = np.arange(len(elems))
    return Endomorphism(C.as_group, local[img], validate=False)


_quotients: dict = {}


def quotient_of(C: Subgroup):
    """Cached (quotient group, projection) for a central subgroup."""
    key = (id(C.parent), C.elements)
    hit = _quotients.get(key)
    if hit is None or hit[0] is not C.parent:
        Q, proj = quotient_by_central(C.parent, C)
        hit = (C.parent, Q, proj)
        _quotients[key] = hit
    return hit[1], hit[2]


def induce_on_quotient(psi: Endomorphism, C: Subgroup) -> Endomorphism:
    """The map gC -> psi(g)C on G/C for a central psi-invariant C."""
    if C.parent is not psi.group:
        raise GroupMismatch("subgroup of a different group")
    if not C.mask[psi.image[np.array(C.elements)]].all():
        raise NotInvariant(f"psi does not map the subgroup of order {C.order} into itself")
    Q, proj = quotient_of(C)
    reps = np.array([int(np.argmax(proj == q)) for q in range(Q.order)])
    img = proj[psi.image[reps]]
    # well defined: every element of a coset lands in the same coset
    if not np.array_equal(proj[psi.image], img[proj]):
        raise NotInvariant("induced map on the quotient is not well defined")
    return Endomorphism(Q, img, validate=False)


def is_fixed_point_free(psi: Endomorphism) -> bool:
    return fixed_points(psi) == (0,)
