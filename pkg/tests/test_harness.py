import json
from dataclasses import replace
from types import SimpleNamespace

import pytest

from reidemeister import harness
from reidemeister.errors import LoadError
from reidemeister.harness import (
    PROPERTIES,
    Corpus,
    CorpusEntry,
    GroupContext,
    RunOptions,
    default_corpus,
    load_corpus,
    random_map_congruences,
    run_single,
    run_verification,
)

SMALL = ["builtin:cyclic:4", "builtin:symmetric:3", "builtin:cyclic:9"]


def small_corpus(**kw):
    return Corpus([CorpusEntry(s) for s in SMALL], **kw)


def test_default_corpus_contents():
    corpus = default_corpus()
    sources = [e.source for e in corpus.entries]
    assert "builtin:paper32" in sources and "builtin:alternating:5" in sources
    assert len(sources) == len(set(sources))
    a5 = next(e for e in corpus.entries if e.source == "builtin:alternating:5")
    assert a5.automorphisms_only


def test_run_is_deterministic():
    a = list(run_verification(small_corpus()).lines())
    b = list(run_verification(small_corpus()).lines())
    assert a == b
    summary = json.loads(a[-1])["summary"]
    assert summary["failures"] == 0 and summary["verdict"] == "PASS"
    assert summary["groups"] == 3


def test_aggregate_records_cover_every_property():
    report = run_verification(small_corpus())
    seen = {(r["group"], r["property"]) for r in report.records}
    assert ("builtin:cyclic:9", "parity") in seen
    assert ("builtin:cyclic:4", "parity") not in seen  # even order, not applicable
    assert (None, "random_map_congruence") in seen
    assert all("seconds" not in r for r in report.records)
    timed = run_verification(small_corpus(), RunOptions(["character_table"], timing=True))
    assert all("seconds" in r for r in timed.records) and "seconds" in timed.summary


def test_per_instance_records():
    report = run_verification(Corpus([CorpusEntry("builtin:symmetric:3")]),
                              RunOptions(["method_agreement"], per_instance=True))
    assert len(report.records) == 100  # all 10 x 10 pairs fit under the cap
    rec = report.records[0]
    assert rec["verdict"] == "PASS" and set(rec["instance"]) == {"phi", "psi"}


def test_sampling_cap_and_seed():
    corpus = Corpus([CorpusEntry("builtin:dihedral:4")], max_pairs=50, seed=3)
    ctx = GroupContext(corpus.entries[0], corpus)
    assert len(ctx.pairs) == 50 and len(ctx.endomorphisms) ** 2 > 50
    again = GroupContext(corpus.entries[0], corpus)
    assert [(a.image.tolist(), b.image.tolist()) for a, b in ctx.pairs] == \
        [(a.image.tolist(), b.image.tolist()) for a, b in again.pairs]
    other = GroupContext(corpus.entries[0], replace(corpus, seed=4))
    assert [(a.image.tolist(), b.image.tolist()) for a, b in other.pairs] != \
        [(a.image.tolist(), b.image.tolist()) for a, b in ctx.pairs]


def test_load_corpus_variants(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps(["builtin:cyclic:3", {"source": "builtin:cyclic:5", "max_pairs": 4}]))
    corpus = load_corpus(str(p))
    assert [e.source for e in corpus.entries] == ["builtin:cyclic:3", "builtin:cyclic:5"]
    assert corpus.entries[1].max_pairs == 4
    p.write_text(json.dumps({"groups": ["builtin:cyclic:3"], "seed": 9, "max_pairs": 7}))
    corpus = load_corpus(str(p))
    assert (corpus.seed, corpus.max_pairs) == (9, 7)
    p.write_text(json.dumps({"groups": "builtin:cyclic:3"}))
    with pytest.raises(LoadError, match="groups"):
        load_corpus(str(p))
    p.write_text(json.dumps([{"max_pairs": 3}]))
    with pytest.raises(LoadError, match="entry 0"):
        load_corpus(str(p))
    with pytest.raises(LoadError):
        load_corpus(str(tmp_path / "absent.json"))


def test_corrupted_cayley_in_corpus(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "cayley", "cayley": [[0, 1, 2], [1, 1, 0], [2, 0, 1]]}))
    corpus = Corpus([CorpusEntry("builtin:cyclic:2"), CorpusEntry(str(bad))])
    with pytest.raises(LoadError, match="field 'cayley'"):
        run_verification(corpus, RunOptions(["method_agreement"]))


def test_failure_records_carry_witness_and_reproduce(monkeypatch):
    def always_fails(ctx, phi, psi):
        return SimpleNamespace(holds=False, values={"R": ctx.R(phi, psi)})

    broken = replace(PROPERTIES["method_agreement"], check=always_fails)
    monkeypatch.setitem(harness.PROPERTIES, "method_agreement", broken)
    report = run_verification(Corpus([CorpusEntry("builtin:cyclic:3")]), RunOptions(["method_agreement"]))
    assert report.failures == 9
    (agg,) = report.records
    assert agg["verdict"] == "FAIL" and agg["failed"] == 9
    assert len(agg["failures"]) == harness.MAX_LISTED_FAILURES
    first = agg["failures"][0]
    assert "R" in first["witness"]
    assert first["reproduce"].startswith("reidemeister verify --group builtin:cyclic:3 --properties method_agreement")
    assert "--phi image:" in first["reproduce"]


def test_exceptions_become_failures(monkeypatch):
    from reidemeister.errors import HypothesisViolated

    def raises(ctx, psi):
        raise HypothesisViolated("boom")

    monkeypatch.setitem(harness.PROPERTIES, "fixed_class_count",
                        replace(PROPERTIES["fixed_class_count"], check=raises))
    report = run_verification(Corpus([CorpusEntry("builtin:cyclic:2")]), RunOptions(["fixed_class_count"]))
    assert report.failures == 2
    assert "HypothesisViolated" in report.records[0]["failures"][0]["witness"]["error"]


def test_run_single_matches_corpus_record():
    rec = run_single("builtin:paper32", "method_agreement", "id", "gens:x=x,y=x^6*y,z=z")
    assert rec["verdict"] == "PASS"
    assert rec["witness"] == {"orbits": 11, "burnside": 11, "class_sum": 11, "characters": 11}
    endo = run_single("builtin:cyclic:5", "gauss_congruence", None, "image:0,2,4,1,3")
    assert endo["verdict"] == "PASS" and "phi" not in endo["instance"]
    assert run_single("builtin:symmetric:3", "fpf_consistency", None, None)["verdict"] == "PASS"
    with pytest.raises(ValueError):
        run_single("builtin:cyclic:2", "random_map_congruence", None, None)


def test_unknown_property():
    with pytest.raises(KeyError):
        run_verification(small_corpus(), RunOptions(["nonsense"]))


def test_random_maps_are_seeded():
    a = [f for f, _ in random_map_congruences(5)]
    b = [f for f, _ in random_map_congruences(5)]
    assert a == b and len(a) == harness.RANDOM_MAPS
    assert all(1 <= len(f) <= harness.RANDOM_MAP_MAX_SIZE for f in a)
    assert all(rep.holds for _, rep in random_map_congruences(5))
