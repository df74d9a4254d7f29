"""Divisor-sum congruences for R(psi^d) and for fixed points of a random self-map."""
import random

from reidemeister import congruence
from reidemeister.groups import parse_builtin
from reidemeister.io import parse_morphism

G = parse_builtin("builtin:dihedral:8")
psi = parse_morphism(G, "gens:r=r^3,s=r*s")
seq = congruence.reidemeister_power_sequence(psi, 12)
print(f"{G.name}, psi = r -> r^3, s -> rs")
print("R(psi^d), d = 1..12:", seq)
for theta in congruence.STANDARD_THETAS:
    totals = [congruence.gauss_congruence(G, psi, n, theta, sequence=seq).total for n in range(1, 13)]
    print(f"  {theta.name:<10} sums {totals}  all divisible: "
          f"{all(t % n == 0 for n, t in enumerate(totals, 1))}")

rng = random.Random(1)
f = [rng.randrange(30) for _ in range(30)]
fixes = congruence.fixed_point_counts(f, 12)
print("\nrandom self-map on 30 points, |Fix(f^d)| =", fixes)
print("points of least period n:", congruence.periodic_point_partition(f, 12))
for theta in congruence.STANDARD_THETAS:
    ok = all(congruence.dold_sum(lambda d: fixes[d - 1], n, theta).holds for n in range(1, 13))
    print(f"  {theta.name:<10} congruences hold: {ok}")
