"""The order-32 group with eleven classes and a class-preserving outer automorphism.

Counts the twisted classes of psi: x -> x, y -> x^6 y, z -> z every way the
package knows and prints the two class-size multisets side by side.
"""
from collections import Counter

from reidemeister import chartab
from reidemeister.groups import parse_builtin
from reidemeister.io import parse_morphism
from reidemeister.morphisms import classify, identity
from reidemeister.twisted import METHODS, reidemeister_number, reidemeister_via_xi, twisted_classes

G = parse_builtin("builtin:paper32")
psi = parse_morphism(G, "gens:x=x,y=x^6*y,z=z")
ident = identity(G)

print(f"|G| = {G.order}, {len(G.conjugacy)} conjugacy classes")
print("conjugacy class sizes:", dict(sorted(Counter(G.conjugacy.class_sizes).items())))

c = classify(psi)
print(f"psi: automorphism={c.is_automorphism} inner={c.is_inner} "
      f"class-preserving={c.is_class_preserving} order={c.order}")

for m in METHODS:
    print(f"  R(psi) via {m:<10} = {reidemeister_number(G, ident, psi, method=m)}")
print(f"  R(psi) via Xi         = {reidemeister_via_xi(G, ident, psi)}")
print(f"  R(psi) via dual map   = {chartab.dual_coincidence_count(ident, psi)}")

part = twisted_classes(G, ident, psi)
print("psi-class sizes:", dict(sorted(Counter(part.class_sizes).items())))
for r, s in zip(part.representatives, part.class_sizes):
    print(f"  [{G.name_of(r)}] size {s}")
