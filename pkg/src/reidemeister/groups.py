"""Finite groups stored as Cayley tables over element indices.

Every group normalises its identity to index 0.  Groups are built from an
explicit table, from permutation generators, or from one of the built-in
families (see :func:`builtin`).  Derived data (conjugacy classes, element
orders, a small generating set) is computed lazily and cached on the
instance; the tables themselves are read-only numpy arrays.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    NotAGroup,
    NotCentral,
    NotSubgroup,
    OrderCapExceeded,
    ParamOutOfRange,
    UnknownFamily,
)

DEFAULT_ORDER_CAP = 2000
FULL_ASSOCIATIVITY_LIMIT = 256


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``mul[a, b]`` is the index of the product ``a*b``; index 0 is the identity.
    The constructor trusts its input, use :func:`build_from_cayley` for
    untrusted tables.
    """

    def __init__(self, mul, name: str = "G", element_names: Sequence[str] | None = None):
        self.mul = _frozen(mul)
        n = self.mul.shape[0]
        inv = np.empty(n, dtype=np.int64)
        rows, cols = np.nonzero(self.mul == 0)
        inv[rows] = cols
        self.inv = _frozen(inv)
        self.name = name
        self.element_names = tuple(element_names) if element_names is not None else None

    def __repr__(self):
        return f"<FiniteGroup {self.name} of order {self.order}>"

    def __len__(self):
        return self.order

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    @property
    def elements(self) -> range:
        return range(self.order)

    def op(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = int(self.inv[g]), -k
        result, base = 0, int(g)
        while k:
            if k & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            k >>= 1
        return result

    def conjugate(self, h: int, g: int) -> int:
        """Return h g h^-1."""
        return int(self.mul[self.mul[h, g], self.inv[h]])

    def name_of(self, g: int) -> str:
        if self.element_names is None:
            return str(int(g))
        return self.element_names[g]

    def index_of(self, label) -> int:
        """Resolve an element given as an index or as a display name."""
        if isinstance(label, (int, np.integer)):
            g = int(label)
        else:
            label = str(label).strip()
            if self.element_names is not None and label in self.element_names:
                return self.element_names.index(label)
            try:
                g = int(label)
            except ValueError:
                raise KeyError(f"{self.name}: unknown element {label!r}") from None
        if not 0 <= g < self.order:
            raise KeyError(f"{self.name}: element index {g} out of range")
        return g

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        idx = np.arange(n)
        pw = idx.copy()
        k = 1
        while (orders == 0).any():
            orders[(pw == 0) & (orders == 0)] = k
            pw = self.mul[pw, idx]
            k += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in set(self.element_orders.tolist())))

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    @cached_property
    def conjugacy(self) -> "ConjugacyClassTable":
        return conjugacy_classes(self)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        return greedy_generating_set(self)


@dataclass(frozen=True)
class ConjugacyClassTable:
    class_of: np.ndarray
    representatives: tuple[int, ...]
    class_sizes: tuple[int, ...]
    centralizer_orders: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.representatives)


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return int(g) in self._set

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.elements == self.elements
        )

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    @cached_property
    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group; element i is ``elements[i]``."""
        G = self.parent
        elems = np.array(self.elements)
        local = np.full(G.order, -1, dtype=np.int64)
        local[elems] = np.arange(len(elems))
        names = None
        if G.element_names is not None:
            names = [G.element_names[g] for g in self.elements]
        return FiniteGroup(local[G.mul[np.ix_(elems, elems)]], name=f"sub({G.name})", element_names=names)


# construction

def build_from_cayley(table, name: str = "G", element_names=None, *,
                      order_cap: int = DEFAULT_ORDER_CAP, seed: int = 0) -> FiniteGroup:
    """Validate a Cayley table and return the group it defines.

    If the identity is not at index 0 the elements are relabeled by swapping
    the identity with element 0 (``element_names`` are swapped accordingly).
    """
    try:
        T = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise NotAGroup(f"table is not an integer matrix: {exc}") from None
    if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
        raise NotAGroup(f"table must be a non-empty square matrix, got shape {T.shape}")
    n = T.shape[0]
    if n > order_cap:
        raise OrderCapExceeded(order_cap)
    if T.min() < 0 or T.max() >= n:
        raise NotAGroup(f"entries must lie in 0..{n - 1}")
    ref = np.arange(n)
    for i in range(n):
        if not (np.sort(T[i]) == ref).all():
            raise NotAGroup(f"row {i} is not a permutation")
        if not (np.sort(T[:, i]) == ref).all():
            raise NotAGroup(f"column {i} is not a permutation")
    ids = [e for e in range(n) if (T[e] == ref).all() and (T[:, e] == ref).all()]
    if not ids:
        raise NotAGroup("no identity element")
    e = ids[0]
    if e != 0:
        sigma = ref.copy()
        sigma[0], sigma[e] = e, 0
        T = sigma[T[np.ix_(sigma, sigma)]]
        if element_names is not None:
            element_names = [element_names[int(s)] for s in sigma]
    inv = np.argmax(T == 0, axis=1)
    bad = np.nonzero(T[inv, ref] != 0)[0]
    if len(bad):
        raise NotAGroup(f"element {int(bad[0])} has no two-sided inverse")
    _check_associative(T, seed)
    return FiniteGroup(T, name=name, element_names=element_names)


def _check_associative(T: np.ndarray, seed: int = 0) -> None:
    n = T.shape[0]
    if n <= FULL_ASSOCIATIVITY_LIMIT:
        for a in range(n):
            lhs = T[T[a]]          # (a*b)*c indexed [b, c]
            rhs = T[a][T]          # a*(b*c) indexed [b, c]
            diff = np.argwhere(lhs != rhs)
            if len(diff):
                b, c = (int(v) for v in diff[0])
                raise NotAGroup(f"associativity fails at ({a}, {b}, {c})")
        return
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, 10 * n))
    bad = np.nonzero(T[T[a, b], c] != T[a, T[b, c]])[0]
    if len(bad):
        i = bad[0]
        raise NotAGroup(f"associativity fails at ({a[i]}, {b[i]}, {c[i]})")


def _parse_permutation(gen, degree: int) -> tuple[int, ...]:
    """Cycle notation (list of lists) or one-line notation, points 1..degree."""
    gen = list(gen)
    if all(isinstance(c, (list, tuple)) for c in gen):
        img = list(range(degree))
        for cycle in gen:
            pts = [int(p) - 1 for p in cycle]
            if len(set(pts)) != len(pts) or any(not 0 <= p < degree for p in pts):
                raise NotAGroup(f"bad cycle {cycle} for degree {degree}")
            for i, p in enumerate(pts):
                img[p] = pts[(i + 1) % len(pts)]
        perm = tuple(img)
    else:
        perm = tuple(int(p) - 1 for p in gen)
        if len(perm) != degree:
            raise NotAGroup(f"one-line permutation {gen} has wrong length for degree {degree}")
    if sorted(perm) != list(range(degree)):
        raise NotAGroup(f"generator {gen} is not a bijection on 1..{degree}")
    return perm


def cycle_string(perm: Sequence[int]) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        parts.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
    return "".join(parts) or "()"


def build_from_permutations(degree: int, generators: Iterable = (), name: str | None = None, *,
                            order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Close a set of permutations of {1..degree} under composition.

    Products compose right to left: ``(p*q)(i) = p(q(i))``.
    """
    if degree < 1:
        raise ParamOutOfRange("degree must be at least 1")
    gens = [_parse_permutation(g, degree) for g in generators]
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        p = elems[i]
        for q in gens:
            r = tuple(p[q[k]] for k in range(degree))
            if r not in index:
                if len(elems) >= order_cap:
                    raise OrderCapExceeded(order_cap)
                index[r] = len(elems)
                elems.append(r)
        i += 1
    P = np.array(elems, dtype=np.int64).reshape(len(elems), degree)
    codes = P @ (degree ** np.arange(degree, dtype=np.int64))
    order = np.argsort(codes)
    sorted_codes = codes[order]
    n = len(elems)
    T = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        comp = P[a][P]  # row b is a∘b
        T[a] = order[np.searchsorted(sorted_codes, comp @ (degree ** np.arange(degree, dtype=np.int64)))]
    names = [cycle_string(p) for p in elems]
    return FiniteGroup(T, name=name or f"perm{degree}", element_names=names)


def _cyclic(n):
    a = np.arange(n)
    names = ["1", "g"] + [f"g^{k}" for k in range(2, n)]
    return FiniteGroup((a[:, None] + a[None, :]) % n, name=f"cyclic({n})", element_names=names[:n])


def _abelian(factors):
    G = _cyclic(factors[0])
    for f in factors[1:]:
        G = direct_product(G, _cyclic(f))
    G.name = "abelian(" + ",".join(map(str, factors)) + ")"
    return G


def _dihedral(n):
    # r^a s^b at index a + n*b
    N = 2 * n
    a, b = np.arange(N) % n, np.arange(N) // n
    A = (a[:, None] + np.where(b[:, None] == 0, 1, -1) * a[None, :]) % n
    B = (b[:, None] + b[None, :]) % 2
    names = [_word([("r", int(x)), ("s", int(y))]) for x, y in zip(a, b)]
    return FiniteGroup(A + n * B, name=f"dihedral({n})", element_names=names)


def _dicyclic(n):
    # a^k x^j at index k + 2n*j with a^{2n} = 1, x^2 = a^n, x a x^-1 = a^-1
    m = 2 * n
    N = 2 * m
    k, j = np.arange(N) % m, np.arange(N) // m
    sign = np.where(j[:, None] == 0, 1, -1)
    both = (j[:, None] == 1) & (j[None, :] == 1)
    K = (k[:, None] + sign * k[None, :] + n * both) % m
    J = (j[:, None] + j[None, :]) % 2
    names = [_word([("a", int(x)), ("x", int(y))]) for x, y in zip(k, j)]
    return FiniteGroup(K + m * J, name=f"dicyclic({n})", element_names=names)


def _heisenberg(p):
    # (a, b, c)(a', b', c') = (a+a', b+b', c+c'+a b') at index a*p^2 + b*p + c
    N = p ** 3
    idx = np.arange(N)
    a, b, c = idx // (p * p), (idx // p) % p, idx % p
    A = (a[:, None] + a[None, :]) % p
    B = (b[:, None] + b[None, :]) % p
    C = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    names = [f"({x},{y},{z})" for x, y, z in zip(a, b, c)]
    return FiniteGroup(A * p * p + B * p + C, name=f"heisenberg({p})", element_names=names)


def _paper32():
    # x^a y^b z^c at index 4a + 2b + c; y x y^-1 = x^3, z x z^-1 = x^5, yz = zy
    idx = np.arange(32)
    a, b, c = idx // 4, (idx // 2) % 2, idx % 2
    twist = (3 ** b[:, None]) * (5 ** c[:, None])
    A = (a[:, None] + a[None, :] * twist) % 8
    B = (b[:, None] + b[None, :]) % 2
    C = (c[:, None] + c[None, :]) % 2
    names = [_word([("x", int(p)), ("y", int(q)), ("z", int(r))]) for p, q, r in zip(a, b, c)]
    return FiniteGroup(4 * A + 2 * B + C, name="paper32", element_names=names)


def _frobenius21():
    # C7 x| C3 acting on 7 points: t -> t+1 and t -> 2t (mod 7)
    gens = [[[1, 2, 3, 4, 5, 6, 7]], [[2, 3, 5], [4, 7, 6]]]
    return build_from_permutations(7, gens, name="frobenius21")


def _metacyclic(m, n, r):
    # x^a y^b at index a*n + b with x^m = y^n = 1, y x y^-1 = x^r
    N = m * n
    idx = np.arange(N)
    a, b = idx // n, idx % n
    rpow = np.array([pow(r, int(k), m) for k in range(n)])
    A = (a[:, None] + a[None, :] * rpow[b][:, None]) % m
    B = (b[:, None] + b[None, :]) % n
    names = [_word([("x", int(p)), ("y", int(q))]) for p, q in zip(a, b)]
    return FiniteGroup(A * n + B, name=f"metacyclic({m},{n},{r})", element_names=names)


def _pauli():
    # X, Z and iI acting on the eight vectors i^c e_k, point 2c + k + 1
    point = lambda c, k: 2 * (c % 4) + k + 1
    X = [point(c, 1 - k) for c in range(4) for k in range(2)]
    Z = [point(c + 2 * k, k) for c in range(4) for k in range(2)]
    iI = [point(c + 1, k) for c in range(4) for k in range(2)]
    return build_from_permutations(8, [X, Z, iI], name="pauli")


def _klein_by_c4():
    # a^i b^j c^k at index 4i + 2j + k; a^4 = b^2 = c^2 = 1, ab = ba, bc = cb, c a c = ab
    idx = np.arange(16)
    i, j, k = idx // 4, (idx // 2) % 2, idx % 2
    I = (i[:, None] + i[None, :]) % 4
    J = (j[:, None] + j[None, :] + k[:, None] * i[None, :]) % 2
    K = (k[:, None] + k[None, :]) % 2
    names = [_word([("a", int(p)), ("b", int(q)), ("c", int(r))]) for p, q, r in zip(i, j, k)]
    return FiniteGroup(4 * I + 2 * J + K, name="klein_by_c4", element_names=names)


def _word(parts):
    out = []
    for sym, e in parts:
        if e == 1:
            out.append(sym)
        elif e > 1:
            out.append(f"{sym}^{e}")
    return "*".join(out) or "1"


def _symmetric(n):
    gens = [] if n == 1 else ([[[1, 2]]] if n == 2 else [[[1, 2]], [list(range(1, n + 1))]])
    return build_from_permutations(n, gens, name=f"symmetric({n})")


def _alternating(n):
    gens = [[[1, 2, k]] for k in range(3, n + 1)]
    return build_from_permutations(n, gens, name=f"alternating({n})")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with (g, h) at index g*|H| + h."""
    n, m = G.order, H.order
    g, h = np.arange(n * m) // m, np.arange(n * m) % m
    T = G.mul[np.ix_(g, g)] * m + H.mul[np.ix_(h, h)]
    names = None
    if G.element_names is not None and H.element_names is not None:
        names = [f"({G.element_names[x]},{H.element_names[y]})" for x, y in zip(g, h)]
    return FiniteGroup(T, name=f"{G.name}x{H.name}", element_names=names)


def _need(params, k, family):
    if len(params) != k:
        raise ParamOutOfRange(f"{family} takes {k} parameter(s), got {len(params)}")


def builtin(family: str, *params, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Construct a group from a named family.

    Families: ``cyclic(n)``, ``dihedral(n)`` (order 2n), ``symmetric(n)``,
    ``alternating(n)`` (n <= 6), ``abelian(*invariant_factors)``,
    ``dicyclic(n)`` (order 4n, n=2 is Q8), ``heisenberg(p)`` (order p^3),
    ``metacyclic(m, n, r)`` (the split extension of C_m by C_n acting as
    x -> x^r), ``pauli`` (the central product of C4 and D4, order 16),
    ``klein_by_c4`` ((C2 x C2) x| C4, order 16),
    ``direct_product(G, H)``, ``frobenius21`` (the nonabelian group of
    order 21 as permutations of 7 points) and ``paper32``, the split
    extension of C8 by C2 x C2 with y: x -> x^3 and z: x -> x^5.
    """
    family = family.lower()
    ints = []
    if family != "direct_product":
        try:
            ints = [int(p) for p in params]
        except (TypeError, ValueError):
            raise ParamOutOfRange(f"{family}: integer parameters expected, got {params}") from None
    if family == "cyclic":
        _need(ints, 1, family)
        if ints[0] < 1:
            raise ParamOutOfRange("cyclic(n) needs n >= 1")
        order = ints[0]
        make = lambda: _cyclic(ints[0])
    elif family == "dihedral":
        _need(ints, 1, family)
        if ints[0] < 1:
            raise ParamOutOfRange("dihedral(n) needs n >= 1")
        order = 2 * ints[0]
        make = lambda: _dihedral(ints[0])
    elif family in ("symmetric", "alternating"):
        _need(ints, 1, family)
        if not 1 <= ints[0] <= 6:
            raise ParamOutOfRange(f"{family}(n) needs 1 <= n <= 6")
        order = math.factorial(ints[0]) // (2 if family == "alternating" and ints[0] > 1 else 1)
        make = (lambda: _symmetric(ints[0])) if family == "symmetric" else (lambda: _alternating(ints[0]))
    elif family == "abelian":
        if not ints or any(f < 1 for f in ints):
            raise ParamOutOfRange("abelian needs positive invariant factors")
        order = math.prod(ints)
        make = lambda: _abelian(ints)
    elif family == "dicyclic":
        _need(ints, 1, family)
        if ints[0] < 1:
            raise ParamOutOfRange("dicyclic(n) needs n >= 1")
        order = 4 * ints[0]
        make = lambda: _dicyclic(ints[0])
    elif family == "heisenberg":
        _need(ints, 1, family)
        if ints[0] < 2:
            raise ParamOutOfRange("heisenberg(p) needs p >= 2")
        order = ints[0] ** 3
        make = lambda: _heisenberg(ints[0])
    elif family == "metacyclic":
        _need(ints, 3, family)
        m, n, r = ints
        if m < 1 or n < 1 or math.gcd(r, m) != 1 or pow(r, n, m) != 1 % m:
            raise ParamOutOfRange("metacyclic(m, n, r) needs gcd(r, m) = 1 and r^n = 1 mod m")
        order = m * n
        make = lambda: _metacyclic(m, n, r % m)
    elif family == "pauli":
        _need(ints, 0, family)
        order = 16
        make = _pauli
    elif family == "klein_by_c4":
        _need(ints, 0, family)
        order = 16
        make = _klein_by_c4
    elif family == "paper32":
        _need(ints, 0, family)
        order = 32
        make = _paper32
    elif family == "frobenius21":
        _need(ints, 0, family)
        order = 21
        make = _frobenius21
    elif family == "direct_product":
        _need(params, 2, family)
        G, H = params
        if not isinstance(G, FiniteGroup) or not isinstance(H, FiniteGroup):
            raise ParamOutOfRange("direct_product takes two FiniteGroup instances")
        order = G.order * H.order
        make = lambda: direct_product(G, H)
    else:
        raise UnknownFamily(family)
    if order > order_cap:
        raise OrderCapExceeded(order_cap)
    return make()


_URI_PART = re.compile(r"^([a-z_0-9]+)((?::[0-9,]+)*)$")


def parse_builtin(uri: str, *, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Resolve ``builtin:family[:p1[:p2...]]``; ``*`` joins direct factors.

    Examples: ``builtin:paper32``, ``builtin:cyclic:12``,
    ``builtin:abelian:4,2,2``, ``builtin:dihedral:4*cyclic:2``.
    """
    if not uri.startswith("builtin:"):
        raise UnknownFamily(uri)
    factors = []
    for part in uri[len("builtin:"):].split("*"):
        m = _URI_PART.match(part.strip().lower())
        if not m:
            raise UnknownFamily(part)
        family = m.group(1)
        params = [p for p in m.group(2).split(":") if p]
        if family in ("abelian", "metacyclic") and len(params) == 1:
            params = params[0].split(",")
        factors.append(builtin(family, *params, order_cap=order_cap))
    G = factors[0]
    for H in factors[1:]:
        G = builtin("direct_product", G, H, order_cap=order_cap)
    if len(factors) > 1:
        G.name = uri[len("builtin:"):]
    return G


# structure

def conjugacy_classes(G: FiniteGroup) -> ConjugacyClassTable:
    """Partition G into conjugacy classes; each representative is the least index."""
    n = G.order
    class_of = np.full(n, -1, dtype=np.int64)
    reps, sizes, members = [], [], []
    for g in range(n):
        if class_of[g] >= 0:
            continue
        cls = np.unique(G.mul[G.mul[:, g], G.inv])
        class_of[cls] = len(reps)
        reps.append(g)
        sizes.append(len(cls))
        members.append(tuple(int(x) for x in cls))
    class_of.setflags(write=False)
    return ConjugacyClassTable(
        class_of=class_of,
        representatives=tuple(reps),
        class_sizes=tuple(sizes),
        centralizer_orders=tuple(n // s for s in sizes),
        members=tuple(members),
    )


def centralizer_order(G: FiniteGroup, g: int) -> int:
    return int((G.mul[:, g] == G.mul[g, :]).sum())


def centralizer(G: FiniteGroup, g: int) -> Subgroup:
    return Subgroup(G, tuple(int(x) for x in np.nonzero(G.mul[:, g] == G.mul[g, :])[0]))


def center(G: FiniteGroup) -> Subgroup:
    commutes = (G.mul == G.mul.T).all(axis=0)
    return Subgroup(G, tuple(int(x) for x in np.nonzero(commutes)[0]))


def _closure_mask(G: FiniteGroup, start_mask: np.ndarray, gens) -> np.ndarray:
    mask = start_mask.copy()
    mask[0] = True
    gens = np.asarray(list(gens), dtype=np.int64)
    if len(gens) == 0:
        return mask
    frontier = np.nonzero(mask)[0]
    while len(frontier):
        prods = np.unique(G.mul[np.ix_(frontier, gens)])
        new = prods[~mask[prods]]
        mask[new] = True
        frontier = new
    return mask


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    mask = _closure_mask(G, np.zeros(G.order, dtype=bool), list(gens))
    return Subgroup(G, tuple(int(x) for x in np.nonzero(mask)[0]))


def make_subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Validate that ``elements`` form a subgroup of G."""
    elems = sorted({int(x) for x in elements})
    if not elems or elems[0] != 0:
        raise NotSubgroup("a subgroup must contain the identity")
    if elems[-1] >= G.order:
        raise NotSubgroup("element index out of range")
    mask = np.zeros(G.order, dtype=bool)
    mask[elems] = True
    E = np.array(elems)
    if not mask[G.mul[np.ix_(E, E)]].all():
        raise NotSubgroup("not closed under multiplication")
    if not mask[G.inv[E]].all():
        raise NotSubgroup("not closed under inverses")
    if G.order % len(elems):
        raise NotSubgroup("order does not divide |G|")
    return Subgroup(G, tuple(elems))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def greedy_generating_set(G: FiniteGroup) -> tuple[int, ...]:
    """Add, at each step, the element enlarging the generated subgroup most.

    Only one candidate per right coset of the current subgroup is tried, since
    every element of a coset generates the same enlargement.
    """
    gens: list[int] = []
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    while not mask.all():
        H = np.nonzero(mask)[0]
        seen = mask.copy()
        best, best_size, best_mask = None, -1, None
        for g in range(G.order):
            if seen[g]:
                continue
            seen[G.mul[H, g]] = True
            m = _closure_mask(G, mask, gens + [g])
            size = int(m.sum())
            if size > best_size:
                best, best_size, best_mask = g, size, m
        gens.append(best)
        mask = best_mask
    return tuple(gens)


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    E = np.array(H.elements)
    conj = G.mul[G.mul[:, E], G.inv[:, None]]
    return bool(H.mask[conj].all())


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """G/N for a normal subgroup N; cosets are ordered by least element."""
    if N.parent is not G:
        raise NotSubgroup("subgroup belongs to a different group")
    make_subgroup(G, N.elements)
    if not is_normal(G, N):
        raise NotSubgroup("subgroup is not normal")
    E = np.array(N.elements)
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for g in range(G.order):
        if coset_of[g] < 0:
            coset_of[G.mul[g, E]] = len(reps)
            reps.append(g)
    R = np.array(reps)
    Q = coset_of[G.mul[np.ix_(R, R)]]
    names = None
    if G.element_names is not None:
        names = [G.element_names[r] + "N" if r else "N" for r in reps]
    coset_of.setflags(write=False)
    return FiniteGroup(Q, name=f"{G.name}/N{N.order}", element_names=names), coset_of


def quotient_by_central(G: FiniteGroup, C: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """Quotient by a central subgroup, with the projection as an index array."""
    if C.parent is not G:
        raise NotSubgroup("subgroup belongs to a different group")
    make_subgroup(G, C.elements)
    Z = center(G)
    if not all(c in Z for c in C.elements):
        raise NotCentral(f"subgroup of order {C.order} is not contained in the center")
    return quotient(G, C)


def commutator_subgroup(G: FiniteGroup, H: Subgroup | None = None) -> Subgroup:
    E = np.array(H.elements if H is not None else range(G.order))
    comm = G.mul[G.mul[np.ix_(E, E)], G.mul[np.ix_(G.inv[E], G.inv[E])]]
    return subgroup_generated(G, np.unique(comm).tolist())


def derived_series(G: FiniteGroup) -> list[Subgroup]:
    series = [whole_group(G)]
    while True:
        D = commutator_subgroup(G, series[-1])
        if D.order == series[-1].order:
            return series
        series.append(D)


def is_solvable(G: FiniteGroup) -> bool:
    return derived_series(G)[-1].order == 1


def subgroups_of_abelian(G: FiniteGroup, A: Subgroup) -> list[Subgroup]:
    """All subgroups of the abelian subgroup A, ordered by (order, elements)."""
    found = {(0,)}
    queue = [(0,)]
    while queue:
        S = queue.pop()
        for a in A.elements:
            if a in S:
                continue
            T = subgroup_generated(G, S + (a,)).elements
            if T not in found:
                found.add(T)
                queue.append(T)
    return [Subgroup(G, s) for s in sorted(found, key=lambda s: (len(s), s))]


def central_subgroups(G: FiniteGroup) -> list[Subgroup]:
    return subgroups_of_abelian(G, center(G))


@lru_cache(maxsize=None)
def cached_builtin(uri: str) -> FiniteGroup:
    return parse_builtin(uri)
