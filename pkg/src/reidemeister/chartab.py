"""Exact character tables and character-theoretic Reidemeister counts.

Tables are computed with Dixon's method: the class-algebra structure
constants are diagonalised simultaneously over F_p for a prime
p = 1 (mod exp G), and the resulting values are lifted to cyclotomic
integers by a discrete Fourier transform over each element's cyclic
subgroup.  Every table is checked against both orthogonality relations
before it is returned.

All character values live in Q(zeta_e) with e the exponent of the group and
are stored as integer coefficient arrays of shape ``(rows, classes, degree)``.
"""
from __future__ import annotations

import random
import weakref
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy import isprime, primitive_root, sqrt_mod

from .cyclotomic import Cyclotomic, CyclotomicField, field
from .errors import (
    GroupMismatch,
    InternalMismatch,
    LiftingFailure,
    NonRationalResult,
    NotAutomorphism,
    PrimeSearchExhausted,
    RowMatchFailure,
)
from .groups import FiniteGroup
from .morphisms import Endomorphism


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """Values on the conjugacy classes of ``group`` as a (classes, degree) array."""

    group: FiniteGroup
    field: CyclotomicField
    coeffs: np.ndarray

    def __getitem__(self, c) -> Cyclotomic:
        return Cyclotomic(self.field, self.coeffs[c].tolist())

    def __len__(self):
        return self.coeffs.shape[0]

    @property
    def values(self) -> list[Cyclotomic]:
        return [self[c] for c in range(len(self))]

    def __eq__(self, other):
        return (
            isinstance(other, ClassFunction)
            and other.group is self.group
            and np.array_equal(other.coeffs, self.coeffs)
        )

    def __hash__(self):
        return hash((id(self.group), self.coeffs.tobytes()))

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.group, self.field, self.field.mul(self.coeffs, other.coeffs))

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.group, self.field, self.coeffs + other.coeffs)

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, self.field, self.field.conj(self.coeffs))

    def at_element(self, g: int) -> Cyclotomic:
        return self[int(self.group.conjugacy.class_of[g])]

    def to_complex(self) -> np.ndarray:
        return np.array([complex(v) for v in self.values])


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: FiniteGroup
    field: CyclotomicField
    values: np.ndarray  # (rows, classes, degree)
    prime: int

    def __len__(self):
        return self.values.shape[0]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(d) for d in self.values[:, 0, 0])

    @property
    def rows(self) -> list[ClassFunction]:
        return [self.row(i) for i in range(len(self))]

    def row(self, i: int) -> ClassFunction:
        return ClassFunction(self.group, self.field, self.values[i])

    def to_complex(self) -> np.ndarray:
        return np.array([r.to_complex() for r in self.rows])


# Dixon's method

def dixon_prime(order: int, exponent: int, limit: int = 10**6) -> int:
    """Smallest prime p = 1 (mod exponent) with p > 2 sqrt(order)."""
    for k in range(1, limit):
        p = k * exponent + 1
        if p * p > 4 * order and isprime(p):
            return p
    raise PrimeSearchExhausted(f"no prime found for order {order}, exponent {exponent}")


def class_structure_constants(G: FiniteGroup) -> np.ndarray:
    """a[r, s, t] = #{x in K_r : x^-1 z_t in K_s} for fixed z_t in K_t."""
    cc = G.conjugacy
    k = len(cc)
    reps = np.array(cc.representatives)
    a = np.zeros((k, k, k), dtype=np.int64)
    for r, members in enumerate(cc.members):
        X = np.array(members)
        cls = cc.class_of[G.mul[G.inv[X][:, None], reps[None, :]]]
        for t in range(k):
            a[r, :, t] = np.bincount(cls[:, t], minlength=k)
    return a


def _rref(A: np.ndarray, p: int):
    A = A.copy() % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if not len(nz):
            continue
        i = r + nz[0]
        A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        for j in range(rows):
            if j != r and A[j, c]:
                A[j] = (A[j] - A[j, c] * A[r]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {v : A v = 0} over F_p."""
    R, pivots = _rref(A, p)
    n = A.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = (-R[row, f]) % p
    return basis


def _split(S: np.ndarray, pivots, M: np.ndarray, p: int) -> list:
    """Split span(rows of S) into eigenspaces of the column action of M."""
    d = S.shape[0]
    A = (M @ S.T % p)[pivots, :]  # column i: coordinates of M S_i
    pieces, total = [], 0
    for lam in range(p):
        N = _nullspace((A - lam * np.eye(d, dtype=np.int64)) % p, p)
        if len(N):
            pieces.append(_rref(N @ S % p, p))
            total += len(N)
            if total == d:
                break
    if total != d:
        raise LiftingFailure("class matrix is not diagonalisable over F_p")
    return pieces


def _central_characters(a: np.ndarray, sizes, p: int) -> list[np.ndarray]:
    k = a.shape[0]
    spaces = [(np.eye(k, dtype=np.int64), list(range(k)))]
    # small classes first; the identity class acts as a scalar
    for r in sorted(range(1, k), key=lambda r: (sizes[r], r)):
        if all(S.shape[0] == 1 for S, _ in spaces):
            break
        new = []
        for S, piv in spaces:
            new.extend([(S, piv)] if S.shape[0] == 1 else _split(S, piv, a[r], p))
        spaces = new
    if not all(S.shape[0] == 1 for S, _ in spaces):
        raise LiftingFailure("common eigenspaces are not one-dimensional")
    out = []
    for S, _ in spaces:
        v = S[0]
        if v[0] == 0:
            raise LiftingFailure("central character vanishes on the identity class")
        out.append(v * pow(int(v[0]), -1, p) % p)
    return out


def _power_classes(G: FiniteGroup, g: int, o: int) -> np.ndarray:
    cls = np.empty(o, dtype=np.int64)
    x = 0
    for l in range(o):
        cls[l] = G.conjugacy.class_of[x]
        x = int(G.mul[x, g])
    return cls


def character_table(G: FiniteGroup) -> CharacterTable:
    """The irreducible characters of G, cached per group instance."""
    table = _tables.get(G)
    if table is None:
        table = _compute_table(G)
        _tables[G] = table
    return table


_tables: "weakref.WeakKeyDictionary[FiniteGroup, CharacterTable]" = weakref.WeakKeyDictionary()


def _compute_table(G: FiniteGroup) -> CharacterTable:
    cc = G.conjugacy
    k, n, e = len(cc), G.order, G.exponent
    fld = field(e)
    p = dixon_prime(n, e)
    sizes = cc.class_sizes
    inv_class = [int(cc.class_of[G.inv[g]]) for g in cc.representatives]
    omegas = _central_characters(class_structure_constants(G), sizes, p)

    w = pow(int(primitive_root(p)), (p - 1) // e, p)
    orders = [int(G.element_orders[g]) for g in cc.representatives]
    power_classes = [_power_classes(G, g, o) for g, o in zip(cc.representatives, orders)]

    rows = []
    for om in omegas:
        s = sum(int(om[r]) * int(om[inv_class[r]]) * pow(sizes[r], -1, p) for r in range(k)) % p
        dsq = n * pow(s, -1, p) % p
        roots = sqrt_mod(dsq, p, all_roots=True) or []
        roots = [r for r in roots if 0 < r < p / 2]
        if not roots:
            raise LiftingFailure(f"no square root of {dsq} mod {p} for a degree")
        d = min(roots)
        chi = [int(om[r]) * d * pow(sizes[r], -1, p) % p for r in range(k)]
        row = np.zeros((k, fld.degree), dtype=np.int64)
        for r in range(k):
            o = orders[r]
            step = e // o
            counts = np.zeros(e, dtype=np.int64)
            vals = [chi[c] for c in power_classes[r]]
            inv_o = pow(o, -1, p)
            for j in range(o):
                root = pow(w, (-step * j) % e, p)
                m = sum(v * pow(root, l, p) for l, v in enumerate(vals)) * inv_o % p
                if m > d:
                    raise LiftingFailure(f"eigenvalue multiplicity {m} exceeds degree {d}")
                counts[j * step] = m
            row[r] = fld.from_exponent_counts(counts)
        rows.append(row)

    values = np.array(rows, dtype=np.int64).reshape(k, k, fld.degree)
    trivial = np.zeros_like(values[0])
    trivial[:, 0] = 1
    order = sorted(
        range(k),
        key=lambda i: (int(values[i, 0, 0]), not np.array_equal(values[i], trivial), values[i].ravel().tolist()),
    )
    values = values[order]
    values.setflags(write=False)
    table = CharacterTable(G, fld, values, p)
    problems = check_table(table)
    if problems:
        raise LiftingFailure("; ".join(problems))
    return table


def check_table(table: CharacterTable) -> list[str]:
    """Return the violated table invariants (empty when the table is valid)."""
    G, fld, T = table.group, table.field, table.values
    cc = G.conjugacy
    n, k = G.order, len(cc)
    problems = []
    if T.shape[0] != k:
        problems.append(f"{T.shape[0]} rows for {k} classes")
        return problems
    if sum(d * d for d in table.degrees) != n:
        problems.append("sum of squared degrees differs from |G|")
    sizes = np.array(cc.class_sizes)
    Tc = fld.conj(T)
    rowprod = fld.mul(T[:, None, :, :], Tc[None, :, :, :])  # (i, j, class, coeff)
    gram = np.einsum("c,ijcd->ijd", sizes, rowprod)
    expect = np.zeros_like(gram)
    expect[np.arange(k), np.arange(k), 0] = n
    if not np.array_equal(gram, expect):
        problems.append("row orthogonality fails")
    colprod = fld.mul(T[:, :, None, :], Tc[:, None, :, :])  # (row, x, y, coeff)
    cols = colprod.sum(axis=0)
    expect = np.zeros_like(cols)
    expect[np.arange(k), np.arange(k), 0] = cc.centralizer_orders
    if not np.array_equal(cols, expect):
        problems.append("column orthogonality fails")
    return problems


# class functions attached to endomorphisms

def _check_group(G: FiniteGroup, *maps: Endomorphism) -> None:
    for m in maps:
        if m.group is not G:
            raise GroupMismatch(f"endomorphism of {m.group.name} used with {G.name}")


def _image_classes(phi: Endomorphism) -> np.ndarray:
    cc = phi.group.conjugacy
    return cc.class_of[phi.image[np.array(cc.representatives)]]


def pullback(chi: ClassFunction, phi: Endomorphism) -> ClassFunction:
    """chi o phi as a class function."""
    _check_group(chi.group, phi)
    return ClassFunction(chi.group, chi.field, chi.coeffs[_image_classes(phi)])


def trivial_character(G: FiniteGroup) -> ClassFunction:
    return character_table(G).row(0)


def inner_product(alpha: ClassFunction, beta: ClassFunction, require_rational: bool = True):
    """(1/|G|) sum_g alpha(g) conj(beta(g)), as a Fraction when rational."""
    if alpha.group is not beta.group:
        raise GroupMismatch("class functions on different groups")
    G, fld = alpha.group, alpha.field
    sizes = np.array(G.conjugacy.class_sizes)
    total = np.einsum("c,cd->d", sizes, fld.mul(alpha.coeffs, fld.conj(beta.coeffs)))
    if fld.rational_part(total) is None:
        if require_rational:
            raise NonRationalResult("inner product is not rational")
        return Cyclotomic(fld, total.tolist()) / G.order
    return Fraction(int(total[0]), G.order)


def theta_literal(G: FiniteGroup, phi: Endomorphism, psi: Endomorphism) -> np.ndarray:
    """Fixed-point counts #{x : phi(g) x psi(g)^-1 = x} at every class representative."""
    _check_group(G, phi, psi)
    reps = np.array(G.conjugacy.representatives)
    a, b = phi.image[reps], psi.image[reps]
    return (G.mul[a, :] == G.mul[:, b].T).sum(axis=1)


def theta_direct(G: FiniteGroup, phi: Endomorphism, psi: Endomorphism,
                 audit: int = 0, seed: int | None = None) -> ClassFunction:
    """Character of the twisted conjugation representation via centraliser orders.

    With ``audit > 0`` that many random elements are re-counted literally.
    """
    _check_group(G, phi, psi)
    cc = G.conjugacy
    cphi, cpsi = _image_classes(phi), _image_classes(psi)
    cent = np.array(cc.centralizer_orders)
    vals = np.where(cphi == cpsi, cent[cphi], 0)
    if audit:
        rng = random.Random(seed)
        for _ in range(audit):
            g = rng.randrange(G.order)
            literal = int((G.mul[phi.image[g], :] == G.mul[:, psi.image[g]]).sum())
            if literal != vals[cc.class_of[g]]:
                raise InternalMismatch(f"closed form disagrees with literal count at g={g}")
    fld = field(G.exponent)
    coeffs = np.zeros((len(cc), fld.degree), dtype=np.int64)
    coeffs[:, 0] = vals
    return ClassFunction(G, fld, coeffs)


def _pair_products(G: FiniteGroup, phi: Endomorphism, psi: Endomorphism) -> np.ndarray:
    """(chi o phi) * conj(chi o psi) for every irreducible chi: (rows, classes, degree)."""
    table = character_table(G)
    fld, T = table.field, table.values
    return fld.mul(T[:, _image_classes(phi)], fld.conj(T[:, _image_classes(psi)]))


def theta_from_characters(G: FiniteGroup, phi: Endomorphism, psi: Endomorphism) -> ClassFunction:
    """sum over irreducible chi of (chi o phi) conj(chi o psi)."""
    _check_group(G, phi, psi)
    return ClassFunction(G, field(G.exponent), _pair_products(G, phi, psi).sum(axis=0))


def theta_multiplicities(G: FiniteGroup, phi: Endomorphism, psi: Endomorphism) -> list[Cyclotomic]:
    """<theta, chi> for each row, by the class-sum expression

    sum over g with [phi(g)] = [psi(g)] of conj(chi(g)) / |[phi(g)]|.
    """
    _check_group(G, phi, psi)
    table = character_table(G)
    cc = G.conjugacy
    cphi, cpsi = _image_classes(phi), _image_classes(psi)
    Tc = table.field.conj(table.values)
    out = []
    for i in range(len(table)):
        acc = Cyclotomic(table.field)
        for c in range(len(cc)):
            if cphi[c] == cpsi[c]:
                w = Fraction(cc.class_sizes[c], cc.class_sizes[cphi[c]])
                acc = acc + Cyclotomic(table.field, [w * int(v) for v in Tc[i, c]])
        out.append(acc)
    return out


def reidemeister_via_characters(G: FiniteGroup, phi: Endomorphism, psi: Endomorphism) -> int:
    """R(phi, psi) as <theta, 1> and as sum_chi <chi o phi, chi o psi>; both must agree."""
    _check_group(G, phi, psi)
    fld = field(G.exponent)
    sizes = np.array(G.conjugacy.class_sizes)
    prods = _pair_products(G, phi, psi)
    per_row = np.einsum("c,rcd->rd", sizes, prods)
    if fld.rational_part(per_row) is None:
        raise NonRationalResult("<chi o phi, chi o psi> is not rational")
    if (per_row[:, 0] % G.order).any() or (per_row[:, 0] < 0).any():
        raise InternalMismatch(f"inner products {per_row[:, 0].tolist()} / {G.order} are not natural numbers")
    by_rows = int(per_row[:, 0].sum()) // G.order

    theta = prods.sum(axis=0)  # the trivial character is identically 1
    total = np.einsum("c,cd->d", sizes, theta)
    if fld.rational_part(total) is None or total[0] % G.order:
        raise InternalMismatch("<theta, 1> is not an integer")
    via_theta = int(total[0]) // G.order
    if via_theta != by_rows:
        raise InternalMismatch(f"<theta,1> = {via_theta} but sum of row products = {by_rows}")
    return by_rows


def dual_map(phi: Endomorphism) -> tuple[int, ...]:
    """Row permutation i -> index of chi_i o phi, for an automorphism phi."""
    if not phi.is_bijective:
        raise NotAutomorphism(f"{phi!r} is not an automorphism")
    table = character_table(phi.group)
    lookup = {table.values[i].tobytes(): i for i in range(len(table))}
    pulled = table.values[:, _image_classes(phi)]
    perm = []
    for i in range(len(table)):
        j = lookup.get(np.ascontiguousarray(pulled[i]).tobytes())
        if j is None:
            raise RowMatchFailure(f"pullback of row {i} is not a table row")
        perm.append(j)
    return tuple(perm)


def dual_coincidence_count(phi: Endomorphism, psi: Endomorphism) -> int:
    """Number of irreducible chi with chi o phi = chi o psi."""
    _check_group(phi.group, psi)
    return sum(a == b for a, b in zip(dual_map(phi), dual_map(psi)))


def regular_character(G: FiniteGroup) -> ClassFunction:
    fld = field(G.exponent)
    coeffs = np.zeros((len(G.conjugacy), fld.degree), dtype=np.int64)
    coeffs[0, 0] = G.order
    return ClassFunction(G, fld, coeffs)


def is_regular_character(theta: ClassFunction) -> bool:
    return theta == regular_character(theta.group)


def fpf_obstruction(G: FiniteGroup) -> bool:
    """True when the degree pattern rules out a fixed-point-free automorphism."""
    degrees = character_table(G).degrees
    counts = {d: degrees.count(d) for d in set(degrees)}
    return counts.get(1, 0) == 2 or any(c == 1 for d, c in counts.items() if d >= 2)


# JSON export

def export_table(table: CharacterTable) -> dict:
    cc = table.group.conjugacy
    return {
        "group": table.group.name,
        "conductor": table.field.e,
        "prime": table.prime,
        "class_representatives": list(cc.representatives),
        "class_sizes": list(cc.class_sizes),
        "rows": [
            {"degree": d, "values": table.values[i].tolist()}
            for i, d in enumerate(table.degrees)
        ],
    }


def load_table(data: dict, G: FiniteGroup) -> CharacterTable:
    fld = field(int(data["conductor"]))
    if list(G.conjugacy.representatives) != list(data["class_representatives"]):
        raise GroupMismatch("class representatives do not match the group")
    values = np.array([row["values"] for row in data["rows"]], dtype=np.int64)
    values = values.reshape(len(data["rows"]), len(G.conjugacy), fld.degree)
    values.setflags(write=False)
    return CharacterTable(G, fld, values, int(data["prime"]))


def degree_count(table: CharacterTable) -> dict[int, int]:
    out: dict[int, int] = {}
    for d in table.degrees:
        out[d] = out.get(d, 0) + 1
    return dict(sorted(out.items()))

