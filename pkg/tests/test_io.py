import json

import numpy as np
import pytest

from reidemeister.errors import LoadError
from reidemeister.groups import parse_builtin
from reidemeister.io import (
    endomorphism_from_dict,
    endomorphism_to_dict,
    group_from_dict,
    group_to_dict,
    load_group,
    morphism_spec,
    parse_morphism,
)
from reidemeister.morphisms import enumerate_automorphisms, identity, inner, trivial


def test_cayley_roundtrip(tmp_path):
    G = parse_builtin("builtin:dicyclic:3")
    path = tmp_path / "g.json"
    path.write_text(json.dumps(group_to_dict(G)))
    H = load_group(str(path))
    assert np.array_equal(H.mul, G.mul)
    assert H.conjugacy.class_sizes == G.conjugacy.class_sizes


def test_permutation_file(tmp_path):
    path = tmp_path / "s3.json"
    path.write_text(json.dumps({"name": "S3", "kind": "permutation", "degree": 3,
                                "generators": [[[1, 2]], [[1, 2, 3]]]}))
    G = load_group(str(path))
    assert G.order == 6 and G.name == "S3"


def test_builtin_kind():
    G = group_from_dict({"kind": "builtin", "uri": "builtin:cyclic:5", "name": "five"})
    assert G.order == 5 and G.name == "five"


@pytest.mark.parametrize("data,field", [
    ({"kind": "cayley", "cayley": [[0, 1], [1, 1]]}, "cayley"),
    ({"kind": "cayley"}, "cayley"),
    ({"kind": "cayley", "cayley": "nope"}, "cayley"),
    ({"kind": "permutation", "degree": 0}, "degree"),
    ({"kind": "permutation", "degree": 3, "generators": [[[1, 7]]]}, "generators"),
    ({"kind": "matrix"}, "kind"),
    ({"kind": "cayley", "name": 3, "cayley": [[0]]}, "name"),
])
def test_malformed_groups_name_the_field(tmp_path, data, field):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    with pytest.raises(LoadError, match=f"bad.json: field '{field}'"):
        load_group(str(path))


def test_unreadable_sources(tmp_path):
    with pytest.raises(LoadError, match="no such file"):
        load_group(str(tmp_path / "missing.json"))
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(LoadError, match="invalid JSON"):
        load_group(str(path))
    with pytest.raises(LoadError):
        load_group("builtin:unknownfamily")
    with pytest.raises(LoadError):
        group_from_dict([1, 2])


def test_morphism_spec_forms(paper32, tmp_path):
    G = paper32
    assert parse_morphism(G, "id") == identity(G) == parse_morphism(G, "identity")
    assert parse_morphism(G, "trivial") == trivial(G)
    assert parse_morphism(G, "inner:y") == inner(G, G.index_of("y"))
    assert parse_morphism(G, "inner:2") == inner(G, 2)
    psi = parse_morphism(G, "gens:x=x,y=x^6*y,z=z")
    assert psi(G.index_of("y")) == G.index_of("x^6*y")
    assert parse_morphism(G, morphism_spec(psi)) == psi
    assert parse_morphism(G, json.dumps(endomorphism_to_dict(psi))) == psi
    path = tmp_path / "psi.json"
    path.write_text(json.dumps({"group": "paper32", "generator_images": {"x": "x", "y": "x^6*y", "z": "z"}}))
    assert parse_morphism(G, str(path)) == psi


def test_morphism_spec_errors():
    G = parse_builtin("builtin:cyclic:4")
    for bad in ("image:0,2,1,3", "image:0,1", "gens:1=2", "inner:q", "bogus"):
        with pytest.raises(LoadError):
            parse_morphism(G, bad)
    with pytest.raises(LoadError):
        endomorphism_from_dict(G, {"group": "C4"})


def test_endomorphism_dict_roundtrip():
    G = parse_builtin("builtin:dihedral:4")
    for a in enumerate_automorphisms(G):
        assert endomorphism_from_dict(G, endomorphism_to_dict(a)) == a
