"""Reidemeister spectra and fixed-point-free automorphisms on a handful of groups."""
from reidemeister import chartab
from reidemeister.groups import is_solvable, parse_builtin
from reidemeister.morphisms import enumerate_automorphisms, is_fixed_point_free
from reidemeister.twisted import reidemeister_spectrum

for uri in ("builtin:cyclic:3", "builtin:cyclic:7", "builtin:symmetric:3", "builtin:dihedral:4",
            "builtin:dicyclic:2", "builtin:frobenius21", "builtin:paper32"):
    G = parse_builtin(uri)
    spec = reidemeister_spectrum(G)
    print(f"{G.name:<14} Spec_Aut = {sorted(spec.spectrum)}  multiplicities {spec.multiplicities}")

print()
for uri in ("builtin:cyclic:3", "builtin:abelian:2,2", "builtin:heisenberg:3",
            "builtin:symmetric:3", "builtin:alternating:5"):
    G = parse_builtin(uri)
    autos = list(enumerate_automorphisms(G))
    fpf = sum(is_fixed_point_free(a) for a in autos)
    print(f"{G.name:<14} |Aut| = {len(autos):<4} fpf = {fpf:<3} solvable = {is_solvable(G)!s:<5} "
          f"character obstruction = {chartab.fpf_obstruction(G)}")
