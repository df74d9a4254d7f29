"""Exact character tables and the twisted character theta_{phi,psi}.

Prints a few tables (values shown numerically, stored exactly) and checks
that <theta, 1> recovers the Reidemeister number.
"""
import numpy as np

from reidemeister import chartab
from reidemeister.groups import parse_builtin
from reidemeister.io import parse_morphism
from reidemeister.morphisms import identity
from reidemeister.twisted import R


def show(uri):
    G = parse_builtin(uri)
    table = chartab.character_table(G)
    print(f"{G.name}: {len(table)} irreducibles, degrees {table.degrees}, "
          f"values in Q(zeta_{table.field.e}), Dixon prime {table.prime}")
    with np.printoptions(precision=3, suppress=True, linewidth=120):
        print(table.to_complex())
    print("  orthogonality problems:", chartab.check_table(table) or "none")


for uri in ("builtin:cyclic:3", "builtin:symmetric:3", "builtin:alternating:5"):
    show(uri)

G = parse_builtin("builtin:paper32")
psi = parse_morphism(G, "gens:x=x,y=x^6*y,z=z")
theta = chartab.theta_direct(G, identity(G), psi)
print("\ntheta_psi on class representatives:", theta.coeffs[:, 0].tolist())
print("<theta, 1> =", chartab.inner_product(theta, chartab.trivial_character(G)), " R(psi) =", R(psi))
print("multiplicities <theta, chi>:", [str(m) for m in chartab.theta_multiplicities(G, identity(G), psi)])
