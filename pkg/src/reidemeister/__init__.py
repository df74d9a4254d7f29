"""Bi-twisted conjugacy on finite groups.

Groups are finite Cayley tables (:mod:`.groups`), endomorphisms are image
arrays (:mod:`.morphisms`), and R(phi, psi) is counted four independent ways
(:mod:`.twisted`), one of them through exact character tables
(:mod:`.chartab`).  :mod:`.congruence` holds the divisor-sum congruences and
:mod:`.harness` the corpus-wide property runner behind the ``reidemeister``
command.
"""
from .chartab import (
    CharacterTable,
    ClassFunction,
    character_table,
    dual_coincidence_count,
    dual_map,
    fpf_obstruction,
    inner_product,
    theta_direct,
    theta_from_characters,
)
from .congruence import gauss_congruence, prime_power_congruence
from .errors import LoadError, ReidemeisterError
from .groups import (
    FiniteGroup,
    Subgroup,
    build_from_cayley,
    build_from_permutations,
    builtin,
    center,
    is_solvable,
    parse_builtin,
)
from .io import load_group, parse_morphism
from .morphisms import (
    Endomorphism,
    enumerate_automorphisms,
    enumerate_endomorphisms,
    from_generator_images,
    identity,
    inner,
    is_class_preserving,
    is_inner,
    trivial,
)
from .twisted import (
    METHODS,
    R,
    reidemeister_number,
    reidemeister_spectrum,
    reidemeister_via_xi,
    twisted_classes,
)

__version__ = "0.1.0"

__all__ = [
    "build_from_cayley",
    "build_from_permutations",
    "builtin",
    "center",
    "character_table",
    "CharacterTable",
    "ClassFunction",
    "dual_coincidence_count",
    "dual_map",
    "Endomorphism",
    "enumerate_automorphisms",
    "enumerate_endomorphisms",
    "FiniteGroup",
    "fpf_obstruction",
    "from_generator_images",
    "gauss_congruence",
    "identity",
    "inner",
    "inner_product",
    "is_class_preserving",
    "is_inner",
    "is_solvable",
    "load_group",
    "LoadError",
    "METHODS",
    "parse_builtin",
    "parse_morphism",
    "prime_power_congruence",
    "R",
    "reidemeister_number",
    "reidemeister_spectrum",
    "reidemeister_via_xi",
    "ReidemeisterError",
    "Subgroup",
    "theta_direct",
    "theta_from_characters",
    "trivial",
    "twisted_classes",
]
