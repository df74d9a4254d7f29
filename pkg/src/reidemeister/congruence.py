"""Arithmetic functions and Gauss (Dold) congruences for R(psi^d) sequences."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from sympy import divisors as _divisors
from sympy import factorint, isprime, mobius, totient

from .errors import NotPrime, ThetaConditionViolated
from .groups import FiniteGroup
from .morphisms import Endomorphism, identity, power
from .twisted import reidemeister_number


@lru_cache(maxsize=4096)
def _divisor_tuple(n: int) -> tuple[int, ...]:
    return tuple(int(d) for d in _divisors(n))


def divisors(n: int) -> list[int]:
    return list(_divisor_tuple(n))


def euler_phi(n: int) -> int:
    return int(totient(n))


def moebius(n: int) -> int:
    return int(mobius(n))


def jordan_totient(k: int, n: int) -> int:
    """J_k(n) = n^k prod_{p | n} (1 - p^-k)."""
    if k < 1 or n < 1:
        raise ValueError("jordan_totient needs k, n >= 1")
    out = n ** k
    for p in factorint(n):
        out = out // p ** k * (p ** k - 1)
    return out


@dataclass(frozen=True)
class ArithmeticFunction:
    name: str
    eval: Callable[[int], int]

    def __call__(self, n: int) -> int:
        return self.eval(n)


EULER_PHI = ArithmeticFunction("euler_phi", euler_phi)
MOEBIUS = ArithmeticFunction("moebius", moebius)


def jordan(k: int) -> ArithmeticFunction:
    return ArithmeticFunction(f"jordan({k})", lambda n: jordan_totient(k, n))


STANDARD_THETAS = (EULER_PHI, MOEBIUS, jordan(2))


@dataclass(frozen=True)
class ThetaConditionReport:
    theta: str
    bound: int
    violations: tuple[int, ...] = ()

    @property
    def holds(self) -> bool:
        return not self.violations


@lru_cache(maxsize=1024)
def verify_theta_condition(theta: ArithmeticFunction, bound: int) -> ThetaConditionReport:
    """Check sum_{d | n} theta(d) = 0 (mod n) for n = 1..bound."""
    bad = tuple(n for n in range(1, bound + 1) if sum(theta(d) for d in divisors(n)) % n)
    return ThetaConditionReport(theta.name, bound, bad)


@dataclass
class CongruenceReport:
    n: int
    theta: str
    terms: list[tuple[int, int, int]]  # (d, theta(n/d), a_d)
    total: int

    @property
    def holds(self) -> bool:
        return self.total % self.n == 0


def dold_sum(sequence: Callable[[int], int], n: int, theta: ArithmeticFunction) -> CongruenceReport:
    """sum_{d | n} theta(n/d) a_d for a_d = sequence(d)."""
    terms = [(d, theta(n // d), sequence(d)) for d in divisors(n)]
    return CongruenceReport(n, theta.name, terms, sum(t * a for _, t, a in terms))


def periodic_point_partition(f: Sequence[int], n: int) -> dict[int, int]:
    """|X_d| for every d | n, X_d the points of least period d under f."""
    f = list(f)
    out = {d: 0 for d in divisors(n)}
    for x in range(len(f)):
        y = f[x]
        for period in range(1, n + 1):
            if y == x:
                if n % period == 0:
                    out[period] += 1
                break
            y = f[y]
    return out


def fixed_point_counts(f: Sequence[int], upto: int) -> list[int]:
    """[|Fix(f^d)| for d = 1..upto] by direct iteration."""
    f = list(f)
    counts = []
    cur = list(f)
    for _ in range(upto):
        counts.append(sum(1 for x, y in enumerate(cur) if x == y))
        cur = [f[y] for y in cur]
    return counts


def class_map(psi: Endomorphism) -> list[int]:
    """The self-map [g] -> [psi(g)] on ordinary conjugacy classes."""
    cc = psi.group.conjugacy
    return [int(cc.class_of[psi.image[g]]) for g in cc.representatives]


def reidemeister_power_sequence(psi: Endomorphism, upto: int) -> list[int]:
    """[R(psi^d) for d = 1..upto] via the orbit count."""
    G = psi.group
    ident = identity(G)
    return [reidemeister_number(G, ident, power(psi, d)) for d in range(1, upto + 1)]


def gauss_congruence(G: FiniteGroup, psi: Endomorphism, n: int, theta: ArithmeticFunction,
                     sequence: Sequence[int] | None = None) -> CongruenceReport:
    """sum_{d | n} theta(n/d) R(psi^d) together with its residue mod n.

    ``sequence`` may carry precomputed values R(psi^1), R(psi^2), ...
    """
    if not verify_theta_condition(theta, n).holds:
        raise ThetaConditionViolated(f"{theta.name} fails the divisor-sum condition up to {n}")
    if sequence is None:
        sequence = reidemeister_power_sequence(psi, n)
    return dold_sum(lambda d: sequence[d - 1], n, theta)


@dataclass
class PrimeCongruenceReport:
    p: int
    r_psi: int
    r_psi_p: int

    @property
    def holds(self) -> bool:
        return (self.r_psi_p - self.r_psi) % self.p == 0


def prime_power_congruence(G: FiniteGroup, psi: Endomorphism, p: int) -> PrimeCongruenceReport:
    """R(psi^p) = R(psi) (mod p)."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    ident = identity(G)
    return PrimeCongruenceReport(
        p,
        reidemeister_number(G, ident, psi),
        reidemeister_number(G, ident, power(psi, p)),
    )

