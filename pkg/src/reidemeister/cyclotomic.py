"""Exact arithmetic in cyclotomic fields Q(zeta_e).

Elements are coefficient vectors in the power basis 1, z, ..., z^(d-1),
d = euler_phi(e), reduced modulo the e-th cyclotomic polynomial, so equal
numbers always have equal coefficient vectors.  Scalar values use
:class:`Cyclotomic`; bulk work (whole character tables) uses integer numpy
arrays whose last axis holds the coefficients, through the helpers on
:class:`CyclotomicField`.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np
from sympy import Poly, Symbol, cyclotomic_poly, totient


class CyclotomicField:
    """Q(zeta_e) with precomputed reduction tables."""

    def __init__(self, e: int):
        if e < 1:
            raise ValueError("conductor must be positive")
        self.e = e
        self.degree = int(totient(e))
        x = Symbol("x")
        # monic, lowest degree first
        self.modulus = tuple(int(c) for c in reversed(Poly(cyclotomic_poly(e, x), x).all_coeffs()))

    def __repr__(self):
        return f"CyclotomicField({self.e})"

    @cached_property
    def powers(self) -> np.ndarray:
        """Row j is z^j reduced, for j = 0..e-1."""
        d, e = self.degree, self.e
        P = np.zeros((e, d), dtype=np.int64)
        v = [0] * d
        v[0] = 1
        for j in range(e):
            P[j] = v
            top = v[-1]
            v = [0] + v[:-1]
            if top:
                v = [vi - top * mi for vi, mi in zip(v, self.modulus[:d])]
        P.setflags(write=False)
        return P

    @cached_property
    def mult_tensor(self) -> np.ndarray:
        d, e = self.degree, self.e
        i = np.arange(d)
        M = self.powers[(i[:, None] + i[None, :]) % e]
        M.setflags(write=False)
        return M

    @cached_property
    def conj_matrix(self) -> np.ndarray:
        d, e = self.degree, self.e
        C = self.powers[(-np.arange(d)) % e]
        C.setflags(write=False)
        return C

    # vectorized helpers on integer coefficient arrays (..., degree)
    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum("...i,...j,ijk->...k", a, b, self.mult_tensor)

    def conj(self, a: np.ndarray) -> np.ndarray:
        return a @ self.conj_matrix

    def from_exponent_counts(self, counts) -> np.ndarray:
        """sum_j counts[..., j] z^j for j = 0..e-1."""
        return np.asarray(counts, dtype=np.int64) @ self.powers

    def rational_part(self, a: np.ndarray):
        """Return a[..., 0] if every a is rational, else None."""
        if a[..., 1:].any():
            return None
        return a[..., 0]

    def element(self, coeffs) -> "Cyclotomic":
        return Cyclotomic(self, coeffs)

    def zeta(self, k: int = 1) -> "Cyclotomic":
        return Cyclotomic(self, self.powers[k % self.e].tolist())

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.e == self.e

    def __hash__(self):
        return hash(("CyclotomicField", self.e))


@lru_cache(maxsize=None)
def field(e: int) -> CyclotomicField:
    return CyclotomicField(e)


class Cyclotomic:
    """An element of Q(zeta_e) with integer or Fraction coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, fld, coeffs=None):
        if isinstance(fld, int):
            fld = field(fld)
        self.field = fld
        d = fld.degree
        if coeffs is None:
            coeffs = [0] * d
        coeffs = [_norm(c) for c in coeffs]
        if len(coeffs) != d:
            raise ValueError(f"expected {d} coefficients, got {len(coeffs)}")
        self.coeffs = tuple(coeffs)

    @classmethod
    def rational(cls, fld, q) -> "Cyclotomic":
        if isinstance(fld, int):
            fld = field(fld)
        return cls(fld, [q] + [0] * (fld.degree - 1))

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.field.e != self.field.e:
                raise ValueError(f"conductor mismatch: {self.field.e} vs {other.field.e}")
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return Cyclotomic.rational(self.field, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        M = self.field.mult_tensor
        d = self.field.degree
        out = [0] * d
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if not b:
                    continue
                ab = a * b
                row = M[i, j]
                for k in range(d):
                    if row[k]:
                        out[k] += ab * int(row[k])
        return Cyclotomic(self.field, out)

    __rmul__ = __mul__

    def __truediv__(self, q):
        if not isinstance(q, (int, Fraction)):
            return NotImplemented
        return Cyclotomic(self.field, [Fraction(a) / q for a in self.coeffs])

    def conjugate(self) -> "Cyclotomic":
        C = self.field.conj_matrix
        d = self.field.degree
        out = [0] * d
        for i, a in enumerate(self.coeffs):
            if a:
                for k in range(d):
                    if C[i, k]:
                        out[k] += a * int(C[i, k])
        return Cyclotomic(self.field, out)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self.is_rational:
            return hash(self.coeffs[0])
        return hash((self.field.e, self.coeffs))

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0])

    def __complex__(self):
        e = self.field.e
        return sum(complex(float(c)) * cmath.exp(2j * cmath.pi * k / e) for k, c in enumerate(self.coeffs))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            terms.append(str(c) if k == 0 else f"{c}*z{self.field.e}^{k}")
        return " + ".join(terms) or "0"


def _norm(c):
    if isinstance(c, np.integer):
        return int(c)
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c
