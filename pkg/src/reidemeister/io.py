"""JSON formats for groups, endomorphisms and corpora, and source resolution.

Group file::

    {"name": str, "kind": "cayley" | "permutation",
     "cayley": [[int]], "degree": int, "generators": [[[int]]]}

Endomorphism file::

    {"group": str, "image": [int]}  or  {"group": str, "generator_images": {"<gen>": <img>}}

Morphism spec strings accepted on the command line: ``id``, ``trivial``,
``inner:<h>``, ``gens:<g>=<img>,...`` (indices or element names),
``image:<i0>,<i1>,...``, a JSON object literal, or a path to a JSON file.
"""
from __future__ import annotations

import json
import os
from pathlib import Path

from .errors import LoadError, ReidemeisterError
from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    build_from_cayley,
    build_from_permutations,
    parse_builtin,
)
from .morphisms import (
    Endomorphism,
    from_generator_images,
    identity,
    inner,
    make_endomorphism,
    trivial,
)


def group_from_dict(data: dict, *, order_cap: int = DEFAULT_ORDER_CAP, context: str = "group") -> FiniteGroup:
    if not isinstance(data, dict):
        raise LoadError(f"{context}: expected a JSON object")
    name = data.get("name", "G")
    if not isinstance(name, str):
        raise LoadError(f"{context}: field 'name' must be a string")
    kind = data.get("kind")
    try:
        if kind == "cayley":
            if "cayley" not in data:
                raise LoadError(f"{context}: field 'cayley' is required for kind 'cayley'")
            table = data["cayley"]
            if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
                raise LoadError(f"{context}: field 'cayley' must be a list of integer rows")
            try:
                return build_from_cayley(table, name=name, element_names=data.get("element_names"),
                                         order_cap=order_cap)
            except (ReidemeisterError, TypeError, ValueError) as exc:
                raise LoadError(f"{context}: field 'cayley': {exc}") from exc
        if kind == "permutation":
            degree = data.get("degree")
            if not isinstance(degree, int) or degree < 1:
                raise LoadError(f"{context}: field 'degree' must be a positive integer")
            gens = data.get("generators", [])
            if not isinstance(gens, list):
                raise LoadError(f"{context}: field 'generators' must be a list of cycle lists")
            try:
                return build_from_permutations(degree, gens, name=name, order_cap=order_cap)
            except (ReidemeisterError, TypeError, ValueError) as exc:
                raise LoadError(f"{context}: field 'generators': {exc}") from exc
        if kind == "builtin":
            uri = data.get("uri")
            if not isinstance(uri, str):
                raise LoadError(f"{context}: field 'uri' must be a builtin URI string")
            G = parse_builtin(uri, order_cap=order_cap)
            if "name" in data:
                G.name = name
            return G
    except LoadError:
        raise
    except (ReidemeisterError, TypeError, ValueError) as exc:
        raise LoadError(f"{context}: {exc}") from exc
    raise LoadError(f"{context}: field 'kind' must be 'cayley' or 'permutation', got {kind!r}")


def group_to_dict(G: FiniteGroup) -> dict:
    return {"name": G.name, "kind": "cayley", "cayley": G.mul.tolist()}


def load_group(source: str, *, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Resolve a builtin URI or a group JSON file."""
    if source.startswith("builtin:"):
        try:
            return parse_builtin(source, order_cap=order_cap)
        except ReidemeisterError as exc:
            raise LoadError(f"{source}: {exc!r}") from exc
    path = Path(source)
    if not path.is_file():
        raise LoadError(f"{source}: no such file and not a builtin URI")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise LoadError(f"{source}: invalid JSON ({exc})") from exc
    return group_from_dict(data, order_cap=order_cap, context=source)


def endomorphism_from_dict(G: FiniteGroup, data: dict) -> Endomorphism:
    try:
        if "image" in data:
            return make_endomorphism(G, data["image"])
        if "generator_images" in data:
            imgs = {G.index_of(k): G.index_of(v) for k, v in data["generator_images"].items()}
            return from_generator_images(G, imgs)
    except (ReidemeisterError, KeyError, TypeError, ValueError) as exc:
        raise LoadError(f"endomorphism of {G.name}: {exc}") from exc
    raise LoadError("endomorphism object needs 'image' or 'generator_images'")


def endomorphism_to_dict(phi: Endomorphism) -> dict:
    return {"group": phi.group.name, "image": phi.image.tolist()}


def parse_morphism(G: FiniteGroup, spec: str) -> Endomorphism:
    spec = spec.strip()
    try:
        if spec in ("id", "identity"):
            return identity(G)
        if spec == "trivial":
            return trivial(G)
        if spec.startswith("inner:"):
            return inner(G, G.index_of(spec[len("inner:"):]))
        if spec.startswith("gens:"):
            pairs = [p for p in spec[len("gens:"):].split(",") if p]
            imgs = {}
            for p in pairs:
                k, _, v = p.partition("=")
                imgs[G.index_of(k)] = G.index_of(v)
            return from_generator_images(G, imgs)
        if spec.startswith("image:"):
            return make_endomorphism(G, [int(v) for v in spec[len("image:"):].split(",")])
        if spec.startswith("{"):
            return endomorphism_from_dict(G, json.loads(spec))
    except LoadError:
        raise
    except (ReidemeisterError, KeyError, ValueError) as exc:
        raise LoadError(f"morphism {spec!r}: {exc}") from exc
    if os.path.isfile(spec):
        return endomorphism_from_dict(G, json.loads(Path(spec).read_text()))
    raise LoadError(f"cannot parse morphism spec {spec!r}")


def morphism_spec(phi: Endomorphism) -> str:
    """Inverse of :func:`parse_morphism` for the ``image:`` form."""
    return "image:" + ",".join(str(int(v)) for v in phi.image)
