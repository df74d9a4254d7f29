"""Corpus handling and the verify-all property runner.

A run walks every (group, property) combination of a corpus, checks each
instance and emits JSON-lines records followed by one summary record.  All
sampling is seeded by ``f"{seed}:{source}"`` so a run is reproducible byte for
byte; wall-clock timing is only reported when asked for.
"""
from __future__ import annotations

import json
import math
import random
import shlex
import time
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Callable, Iterable, Iterator

import numpy as np

from . import chartab, congruence
from .errors import EnumerationCapExceeded, LoadError, ReidemeisterError
from .groups import DEFAULT_ORDER_CAP, central_subgroups, is_solvable
from .io import load_group, morphism_spec, parse_morphism
from .morphisms import (
    Endomorphism,
    automorphism_order,
    compose,
    enumerate_automorphisms,
    enumerate_endomorphisms,
    fixed_points,
    identity,
    inner,
    is_class_preserving,
    is_fixed_point_free,
    power,
)
from .twisted import (
    CheckReport,
    check_central_bounds,
    check_class_preserving_invariance,
    check_gap_theorem,
    check_symmetry_equalities,
    reidemeister_number,
    reidemeister_via_xi,
    stabilizer,
    transporter_count,
    twisted_action,
    twisted_classes,
)

DEFAULT_MAX_PAIRS = 2000
DEFAULT_SEED = 0
ENUMERATION_CAP = 100_000
GAP_EXHAUSTIVE_ORDER = 12
CHARACTER_IDENTITY_ORDER = 32
CENTRAL_BOUNDS_PAIRS = 300
POWER_RANGE = 12
GAUSS_RANGE = 12
PRIMES = (2, 3, 5, 7)
RANDOM_MAPS = 100
RANDOM_MAP_MAX_SIZE = 40
MAX_LISTED_FAILURES = 5


# corpus

@dataclass
class CorpusEntry:
    source: str
    max_pairs: int | None = None
    automorphisms_only: bool = False


@dataclass
class Corpus:
    entries: list[CorpusEntry]
    max_order: int = DEFAULT_ORDER_CAP
    max_pairs: int = DEFAULT_MAX_PAIRS
    seed: int = DEFAULT_SEED

    @property
    def sources(self) -> list[str]:
        return [e.source for e in self.entries]


_SMALL_BUILTINS = (
    [f"builtin:cyclic:{n}" for n in range(1, 17)]
    + [f"builtin:abelian:{f}" for f in
       ("2,2", "4,2", "2,2,2", "3,3", "6,2", "8,2", "4,4", "4,2,2", "2,2,2,2")]
    + [f"builtin:dihedral:{n}" for n in range(3, 9)]
    + ["builtin:dicyclic:2", "builtin:dicyclic:3", "builtin:dicyclic:4",
       "builtin:alternating:4", "builtin:dihedral:4*cyclic:2", "builtin:dicyclic:2*cyclic:2",
       "builtin:metacyclic:8,2,3", "builtin:metacyclic:8,2,5", "builtin:metacyclic:4,4,3",
       "builtin:pauli", "builtin:klein_by_c4"]
)


DEFAULT_SOURCES = _SMALL_BUILTINS + [
    "builtin:symmetric:3",
    "builtin:symmetric:4",
    "builtin:paper32",
    "builtin:frobenius21",
    "builtin:abelian:9,3",
    "builtin:heisenberg:3",
]


def default_corpus(seed: int = DEFAULT_SEED, max_pairs: int = DEFAULT_MAX_PAIRS,
                   max_order: int = DEFAULT_ORDER_CAP) -> Corpus:
    entries = [CorpusEntry(s) for s in DEFAULT_SOURCES]
    entries.append(CorpusEntry("builtin:alternating:5", automorphisms_only=True))
    return Corpus(entries, max_order=max_order, max_pairs=max_pairs, seed=seed)


def load_corpus(path: str, *, seed: int = DEFAULT_SEED, max_pairs: int = DEFAULT_MAX_PAIRS,
                max_order: int = DEFAULT_ORDER_CAP) -> Corpus:
    """A JSON list of sources, each a string or ``{"source", "max_pairs", "automorphisms_only"}``."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise LoadError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise LoadError(f"{path}: invalid JSON ({exc})") from exc
    if isinstance(data, dict):
        seed = data.get("seed", seed)
        max_pairs = data.get("max_pairs", max_pairs)
        max_order = data.get("max_order", max_order)
        data = data.get("groups")
    if not isinstance(data, list):
        raise LoadError(f"{path}: field 'groups' must be a list of group sources")
    entries = []
    for i, item in enumerate(data):
        if isinstance(item, str):
            entries.append(CorpusEntry(item))
        elif isinstance(item, dict) and isinstance(item.get("source"), str):
            entries.append(CorpusEntry(item["source"], item.get("max_pairs"),
                                       bool(item.get("automorphisms_only", False))))
        else:
            raise LoadError(f"{path}: entry {i} needs a 'source' string")
    return Corpus(entries, max_order=max_order, max_pairs=max_pairs, seed=seed)


# per-group state

def _sample_indices(rng: random.Random, total: int, cap: int) -> list[int]:
    if total <= cap:
        return list(range(total))
    return sorted(rng.sample(range(total), cap))


def _instance_key(*maps: Endomorphism) -> int:
    return zlib.crc32(b"".join(m.image.tobytes() for m in maps))


class GroupContext:
    """A loaded corpus group with its enumerations, samples and memoised counts."""

    def __init__(self, entry: CorpusEntry, corpus: Corpus):
        self.source = entry.source
        self.G = load_group(entry.source, order_cap=corpus.max_order)
        self.max_pairs = entry.max_pairs if entry.max_pairs is not None else corpus.max_pairs
        self.automorphisms_only = entry.automorphisms_only
        self.seed = corpus.seed
        self._r: dict[tuple[bytes, bytes], int] = {}
        self._ident = identity(self.G)

    def rng(self, tag: str = "") -> random.Random:
        return random.Random(f"{self.seed}:{self.source}{':' + tag if tag else ''}")

    @cached_property
    def automorphisms(self) -> list[Endomorphism]:
        return _collect(enumerate_automorphisms(self.G))

    @cached_property
    def endomorphisms(self) -> list[Endomorphism]:
        if self.automorphisms_only:
            return self.automorphisms
        return _collect(enumerate_endomorphisms(self.G))

    def _pairs_from(self, maps: list[Endomorphism], tag: str) -> list[tuple[Endomorphism, Endomorphism]]:
        n = len(maps)
        idx = _sample_indices(self.rng(tag), n * n, self.max_pairs)
        return [(maps[i // n], maps[i % n]) for i in idx]

    @cached_property
    def pairs(self):
        return self._pairs_from(self.endomorphisms, "")

    @cached_property
    def automorphism_pairs(self):
        return self._pairs_from(self.automorphisms, "aut")

    @cached_property
    def all_pairs(self):
        E = self.endomorphisms
        return [(a, b) for a in E for b in E]

    @cached_property
    def psi_sample(self) -> list[Endomorphism]:
        E = self.endomorphisms
        return [E[i] for i in _sample_indices(self.rng("psi"), len(E), self.max_pairs)]

    @cached_property
    def class_preserving(self) -> list[Endomorphism]:
        return [a for a in self.automorphisms if is_class_preserving(a)]

    @cached_property
    def central(self):
        return central_subgroups(self.G)

    def R(self, phi: Endomorphism, psi: Endomorphism) -> int:
        key = (phi.image.tobytes(), psi.image.tobytes())
        r = self._r.get(key)
        if r is None:
            r = self._r[key] = reidemeister_number(self.G, phi, psi)
        return r

    def power_sequence(self, psi: Endomorphism, upto: int) -> list[int]:
        out, cur = [], psi
        for _ in range(upto):
            out.append(self.R(self._ident, cur))
            cur = compose(cur, psi)
        return out


def _collect(it: Iterator[Endomorphism]) -> list[Endomorphism]:
    out = []
    for m in it:
        out.append(m)
        if len(out) > ENUMERATION_CAP:
            raise EnumerationCapExceeded(len(out), ENUMERATION_CAP)
    return out


# properties

@dataclass(frozen=True)
class Property:
    id: str
    kind: str  # "pair", "endo", "group" or "global"
    description: str
    check: Callable
    applies: Callable[[GroupContext], bool] = lambda ctx: True
    instances: Callable[[GroupContext], Iterable] | None = None


def _method_agreement(ctx, phi, psi):
    vals = {m: reidemeister_number(ctx.G, phi, psi, method=m)
            for m in ("orbits", "burnside", "class_sum", "characters")}
    return CheckReport("method_agreement", len(set(vals.values())) == 1, vals)


def _character_inner_products(ctx, phi, psi):
    G = ctx.G
    table = chartab.character_table(G)
    theta = chartab.theta_direct(G, phi, psi)
    via_theta = chartab.inner_product(theta, chartab.trivial_character(G))
    terms = [chartab.inner_product(chartab.pullback(chi, phi), chartab.pullback(chi, psi))
             for chi in table.rows]
    r = ctx.R(phi, psi)
    natural = all(t.denominator == 1 and t >= 0 for t in terms)
    vals = {"R": r, "<theta,1>": str(via_theta), "sum_chi": str(sum(terms, Fraction(0))),
            "terms": [str(t) for t in terms]}
    return CheckReport("character_inner_products", natural and via_theta == r == sum(terms), vals)


def _theta_character_sum(ctx, phi, psi):
    G = ctx.G
    direct = chartab.theta_direct(G, phi, psi)
    summed = chartab.theta_from_characters(G, phi, psi)
    literal = chartab.theta_literal(G, phi, psi)
    ok = summed == direct and direct.coeffs[:, 0].tolist() == literal.tolist() and not direct.coeffs[:, 1:].any()
    vals = {"direct": direct.coeffs[:, 0].tolist(), "literal": literal.tolist(),
            "from_characters": summed.coeffs.tolist()}
    return CheckReport("theta_character_sum", ok, vals)


def _theta_multiplicities(ctx, phi, psi):
    G = ctx.G
    table = chartab.character_table(G)
    theta = chartab.theta_direct(G, phi, psi)
    by_inner = [chartab.inner_product(theta, chi) for chi in table.rows]
    by_sum = [m.to_rational() if m.is_rational else None for m in chartab.theta_multiplicities(G, phi, psi)]
    vals = {"inner_product": [str(v) for v in by_inner], "class_sum": [str(v) for v in by_sum]}
    return CheckReport("theta_multiplicities", by_inner == by_sum, vals)


def _class_sum_formula(ctx, phi, psi):
    """Element-level sum of 1/|[phi(g)]| over g with [phi(g)] = [psi(g)]."""
    G = ctx.G
    cc = G.conjugacy
    cphi, cpsi = cc.class_of[phi.image], cc.class_of[psi.image]
    total = sum((Fraction(1, cc.class_sizes[a]) for a, b in zip(cphi.tolist(), cpsi.tolist()) if a == b),
                Fraction(0))
    r = ctx.R(phi, psi)
    return CheckReport("class_sum_formula", total == r, {"R": r, "element_sum": str(total)})


def _transporter(ctx, phi, psi):
    G = ctx.G
    part = twisted_classes(G, phi, psi)
    act = twisted_action(G, phi, psi)
    bad = []
    for c, x in enumerate(part.representatives):
        y = part.members(c)[-1]
        stab = len(stabilizer(G, phi, psi, x))
        t_xy = transporter_count(G.elements, act, x, y)
        t_yx = transporter_count(G.elements, act, y, x)
        if not (t_xy == t_yx == stab and stab * part.class_sizes[c] == G.order):
            bad.append({"x": x, "y": y, "stab": stab, "T(x,y)": t_xy, "T(y,x)": t_yx,
                        "orbit": part.class_sizes[c]})
    if len(part) > 1:
        x, y = part.representatives[0], part.representatives[1]
        if transporter_count(G.elements, act, x, y):
            bad.append({"x": x, "y": y, "T(x,y)": "nonzero across classes"})
    return CheckReport("transporter_lemma", not bad, {"classes": len(part), "violations": bad})


def _symmetry(ctx, phi, psi):
    k = _instance_key(phi, psi)
    iota = inner(ctx.G, k % ctx.G.order)
    xi = ctx.automorphisms[k % len(ctx.automorphisms)]
    rep = check_symmetry_equalities(ctx.G, phi, psi, iota, xi)
    rep.values.update({"iota": f"inner:{k % ctx.G.order}", "xi": morphism_spec(xi)})
    return rep


def _class_preserving(ctx, phi, psi):
    cps = ctx.class_preserving
    xi = cps[_instance_key(phi, psi) % len(cps)]
    rep = check_class_preserving_invariance(ctx.G, phi, psi, xi)
    rep.values["xi"] = morphism_spec(xi)
    return rep


def _inverse(phi: Endomorphism) -> Endomorphism:
    return Endomorphism(phi.group, np.argsort(phi.image), validate=False)


def _dual_coincidence(ctx, phi, psi):
    r = ctx.R(phi, psi)
    coin = chartab.dual_coincidence_count(phi, psi)
    single = ctx.R(ctx._ident, compose(_inverse(phi), psi))
    dphi, dpsi = chartab.dual_map(phi), chartab.dual_map(psi)
    dcomp = chartab.dual_map(compose(phi, psi))
    contravariant = all(dcomp[i] == dpsi[dphi[i]] for i in range(len(dphi)))
    vals = {"R": r, "coincidences": coin, "R(phi^-1 psi)": single, "contravariant": contravariant}
    return CheckReport("dual_coincidence", r == coin == single and contravariant, vals)


def _central_bounds(ctx, phi, psi):
    results, ok = [], True
    for C in ctx.central:
        if not (C.mask[phi.image[list(C.elements)]].all() and C.mask[psi.image[list(C.elements)]].all()):
            continue
        rep = check_central_bounds(ctx.G, C, phi, psi)
        ok = ok and rep.holds
        if not rep.holds:
            results.append({"C": list(C.elements), **rep.values})
    return CheckReport("central_bounds", ok, {"violations": results})


def _gap(ctx, phi, psi):
    return check_gap_theorem(ctx.G, phi, psi, r=ctx.R(phi, psi))


def _parity(ctx, phi, psi):
    r = ctx.R(phi, psi)
    return CheckReport("parity", r % 2 == 1, {"R": r, "order": ctx.G.order})


def _fixed_class_count(ctx, psi):
    cc = ctx.G.conjugacy
    fixed = int(sum(1 for g in cc.representatives if cc.class_of[psi.image[g]] == cc.class_of[g]))
    r = ctx.R(ctx._ident, psi)
    return CheckReport("fixed_class_count", r == fixed, {"R": r, "fixed_classes": fixed})


def _fixed_point_criteria(ctx, psi):
    G = ctx.G
    r = ctx.R(ctx._ident, psi)
    fix_trivial = fixed_points(psi) == (0,)
    regular = chartab.is_regular_character(chartab.theta_direct(G, ctx._ident, psi))
    vals = {"R": r, "Fix_trivial": fix_trivial, "theta_regular": regular}
    ok = (r == 1) == fix_trivial == regular
    if psi.is_bijective:
        dual = chartab.dual_map(psi)
        dual_fixed = sum(1 for i, j in enumerate(dual) if i == j)
        vals["dual_fixed"] = dual_fixed
        ok = ok and dual_fixed == r and (dual_fixed == 1) == (r == 1)
    return CheckReport("fixed_point_criteria", ok, vals)


def _xi(ctx, psi):
    r = ctx.R(ctx._ident, psi)
    vals = {"R": r}
    for k in range(4):
        vals[f"phi=psi^{k}"] = reidemeister_via_xi(ctx.G, power(psi, k), psi)
    return CheckReport("xi_fixed_classes", len(set(vals.values())) == 1, vals)


def _power(ctx, psi):
    seq = ctx.power_sequence(psi, POWER_RANGE)
    order = automorphism_order(psi) if psi.is_bijective else None
    bad = []
    for k in range(1, POWER_RANGE + 1):
        if seq[k - 1] < seq[0] or (order and math.gcd(k, order) == 1 and seq[k - 1] != seq[0]):
            bad.append(k)
    return CheckReport("power_inequality", not bad, {"R(psi^k)": seq, "order": order, "bad_k": bad})


def _gauss(ctx, psi):
    seq = ctx.power_sequence(psi, GAUSS_RANGE)
    bad = []
    for theta in congruence.STANDARD_THETAS:
        for n in range(1, GAUSS_RANGE + 1):
            rep = congruence.gauss_congruence(ctx.G, psi, n, theta, sequence=seq)
            if not rep.holds:
                bad.append({"theta": theta.name, "n": n, "sum": rep.total})
    return CheckReport("gauss_congruence", not bad, {"R(psi^d)": seq, "violations": bad})


def _prime(ctx, psi):
    seq = ctx.power_sequence(psi, max(PRIMES))
    bad = [p for p in PRIMES
           if not congruence.PrimeCongruenceReport(p, seq[0], seq[p - 1]).holds]
    return CheckReport("prime_congruence", not bad, {"R(psi^d)": seq[:max(PRIMES)], "bad_p": bad})


def _character_table(ctx):
    table = chartab.character_table(ctx.G)
    problems = chartab.check_table(table)
    degsq = sum(d * d for d in table.degrees)
    if degsq != ctx.G.order:
        problems.append(f"sum of squared degrees {degsq} != {ctx.G.order}")
    if len(table) != len(ctx.G.conjugacy):
        problems.append("row count differs from class count")
    return CheckReport("character_table", not problems,
                       {"degrees": list(table.degrees), "problems": problems})


def _fpf(ctx):
    fpf = [a for a in ctx.automorphisms if is_fixed_point_free(a)]
    solvable = is_solvable(ctx.G)
    obstruction = chartab.fpf_obstruction(ctx.G)
    ok = (not fpf or solvable) and not (obstruction and fpf)
    vals = {"automorphisms": len(ctx.automorphisms), "fpf": len(fpf),
            "solvable": solvable, "obstruction": obstruction}
    return CheckReport("fpf_consistency", ok, vals)


def random_map_congruences(seed: int, count: int = RANDOM_MAPS, max_size: int = RANDOM_MAP_MAX_SIZE,
                           upto: int = GAUSS_RANGE) -> Iterator[tuple[list[int], CheckReport]]:
    """Fixed-point sequences of seeded random self-maps against the divisor-sum congruences."""
    rng = random.Random(f"{seed}:random-maps")
    for _ in range(count):
        size = rng.randint(1, max_size)
        f = [rng.randrange(size) for _ in range(size)]
        fixes = congruence.fixed_point_counts(f, upto)
        bad = []
        for n in range(1, upto + 1):
            parts = congruence.periodic_point_partition(f, n)
            if parts[n] != congruence.dold_sum(lambda d: fixes[d - 1], n, congruence.MOEBIUS).total:
                bad.append({"n": n, "partition": "least-period count mismatch"})
            for theta in congruence.STANDARD_THETAS:
                rep = congruence.dold_sum(lambda d: fixes[d - 1], n, theta)
                if not rep.holds:
                    bad.append({"theta": theta.name, "n": n, "sum": rep.total})
        yield f, CheckReport("random_map_congruence", not bad, {"fix": fixes, "violations": bad})


def _odd(ctx):
    return ctx.G.order % 2 == 1


def _nontrivial(ctx):
    return ctx.G.order > 1


def _small(limit):
    return lambda ctx: ctx.G.order <= limit


PROPERTIES: dict[str, Property] = {p.id: p for p in [
    Property("method_agreement", "pair", "orbits, burnside, class_sum and characters agree", _method_agreement),
    Property("character_inner_products", "pair",
             "R = <theta,1> = sum of <chi o phi, chi o psi>, each term a natural number",
             _character_inner_products),
    Property("theta_character_sum", "pair", "sum_chi (chi o phi) conj(chi o psi) equals the centraliser formula",
             _theta_character_sum, _small(CHARACTER_IDENTITY_ORDER)),
    Property("theta_multiplicities", "pair", "<theta, chi> equals its class-sum expression",
             _theta_multiplicities, _small(CHARACTER_IDENTITY_ORDER)),
    Property("class_sum_formula", "pair", "R equals the element sum of 1/|[phi(g)]|", _class_sum_formula),
    Property("transporter_lemma", "pair", "transporters within an orbit have stabiliser size",
             _transporter),
    Property("symmetry_equalities", "pair", "R(phi,psi) = R(psi,phi) = R(iota phi,psi) = R(xi phi,xi psi)",
             _symmetry),
    Property("class_preserving_invariance", "pair", "composing with class-preserving maps keeps R",
             _class_preserving),
    Property("dual_coincidence", "pair", "R = |Coin(dual phi, dual psi)| = R(phi^-1 psi) for automorphisms",
             _dual_coincidence, instances=lambda ctx: ctx.automorphism_pairs),
    Property("central_bounds", "pair", "R on a central subgroup and quotient sandwich R(phi,psi)",
             _central_bounds, instances=lambda ctx: ctx.pairs[:CENTRAL_BOUNDS_PAIRS]),
    Property("gap_theorem", "pair", "R above the gap bound iff phi = psi central iff R = |G|",
             _gap, _nontrivial,
             instances=lambda ctx: ctx.all_pairs if ctx.G.order <= GAP_EXHAUSTIVE_ORDER else ctx.pairs),
    Property("parity", "pair", "R is odd on groups of odd order (every pair)", _parity, _odd,
             instances=lambda ctx: ctx.all_pairs),
    Property("fixed_class_count", "endo", "R(psi) counts classes with [psi(g)] = [g]", _fixed_class_count),
    Property("fixed_point_criteria", "endo",
             "R(psi) = 1 iff Fix(psi) trivial iff theta_psi regular (iff dual fixes only the trivial row)",
             _fixed_point_criteria, instances=lambda ctx: ctx.endomorphisms),
    Property("xi_fixed_classes", "endo", "R(psi) = |Fix(Xi)| for phi in {id, psi, psi^2, psi^3}", _xi),
    Property("power_inequality", "endo", "R(psi^k) >= R(psi), equality when gcd(k, ord psi) = 1", _power),
    Property("gauss_congruence", "endo", "divisor sums of R(psi^d) vanish mod n", _gauss),
    Property("prime_congruence", "endo", "R(psi^p) = R(psi) mod p", _prime),
    Property("character_table", "group", "orthogonality and degree checks of the computed table",
             _character_table),
    Property("fpf_consistency", "group", "fpf automorphism implies solvable; obstruction implies none", _fpf),
    Property("random_map_congruence", "global", "divisor-sum congruences for random self-maps", None),
]}


# running

@dataclass
class RunOptions:
    properties: list[str] | None = None
    per_instance: bool = False
    timing: bool = False


@dataclass
class VerificationReport:
    records: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def failures(self) -> int:
        return self.summary.get("failures", 0)

    def lines(self) -> Iterator[str]:
        for r in self.records:
            yield json.dumps(r, sort_keys=True)
        yield json.dumps({"summary": self.summary}, sort_keys=True)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, Fraction):
        return str(v)
    return v


def reproduce_command(prop: str, source: str, phi: Endomorphism | None = None,
                      psi: Endomorphism | None = None) -> str:
    parts = ["reidemeister", "verify", "--group", source, "--properties", prop]
    if phi is not None:
        parts += ["--phi", morphism_spec(phi)]
    if psi is not None:
        parts += ["--psi", morphism_spec(psi)]
    return shlex.join(parts)


def check_instance(prop: Property, ctx: GroupContext, instance: tuple) -> dict:
    """Run one property instance and return its record."""
    phi = psi = None
    if prop.kind == "pair":
        phi, psi = instance
    elif prop.kind == "endo":
        (psi,) = instance
    try:
        rep = prop.check(ctx, *instance)
        verdict, witness = ("PASS" if rep.holds else "FAIL"), _jsonable(rep.values)
    except ReidemeisterError as exc:
        verdict, witness = "FAIL", {"error": f"{type(exc).__name__}: {exc}"}
    rec = {"property": prop.id, "group": ctx.source, "verdict": verdict, "witness": witness}
    inst = {}
    if phi is not None:
        inst["phi"] = morphism_spec(phi)
    if psi is not None:
        inst["psi"] = morphism_spec(psi)
    rec["instance"] = inst
    if verdict == "FAIL":
        rec["reproduce"] = reproduce_command(prop.id, ctx.source, phi, psi)
    return rec


def property_instances(prop: Property, ctx: GroupContext) -> Iterable[tuple]:
    if prop.instances is not None:
        items = prop.instances(ctx)
    elif prop.kind == "pair":
        items = ctx.pairs
    elif prop.kind == "endo":
        items = ctx.psi_sample
    else:
        return [()]
    if prop.kind == "endo":
        return [(p,) for p in items]
    return items


def _selected(names: list[str] | None) -> list[Property]:
    if not names:
        return list(PROPERTIES.values())
    unknown = [n for n in names if n not in PROPERTIES]
    if unknown:
        raise KeyError(f"unknown properties {unknown}; known: {sorted(PROPERTIES)}")
    return [PROPERTIES[n] for n in names]


def _aggregate(prop_id: str, group: str, records: list[dict], seconds: float | None) -> dict:
    failed = [r for r in records if r["verdict"] == "FAIL"]
    out = {"property": prop_id, "group": group, "instances": len(records),
           "failed": len(failed), "verdict": "FAIL" if failed else "PASS"}
    if failed:
        out["failures"] = failed[:MAX_LISTED_FAILURES]
    if seconds is not None:
        out["seconds"] = round(seconds, 3)
    return out


def run_verification(corpus: Corpus, options: RunOptions | None = None,
                     progress: Callable[[str], None] | None = None) -> VerificationReport:
    options = options or RunOptions()
    props = _selected(options.properties)
    report = VerificationReport()
    total = failures = 0
    t_start = time.perf_counter()

    def emit(prop_id, group, recs, seconds):
        nonlocal total, failures
        total += len(recs)
        failures += sum(r["verdict"] == "FAIL" for r in recs)
        if options.per_instance:
            report.records.extend(recs)
        elif recs:
            report.records.append(_aggregate(prop_id, group, recs, seconds if options.timing else None))

    for entry in corpus.entries:
        ctx = GroupContext(entry, corpus)
        for prop in props:
            if prop.kind == "global" or not prop.applies(ctx):
                continue
            if progress:
                progress(f"{ctx.source} {prop.id}")
            t0 = time.perf_counter()
            recs = [check_instance(prop, ctx, inst) for inst in property_instances(prop, ctx)]
            emit(prop.id, ctx.source, recs, time.perf_counter() - t0)

    if any(p.kind == "global" for p in props):
        t0 = time.perf_counter()
        recs = []
        for f, rep in random_map_congruences(corpus.seed):
            rec = {"property": "random_map_congruence", "group": None,
                   "instance": {"map": f}, "verdict": "PASS" if rep.holds else "FAIL",
                   "witness": _jsonable(rep.values)}
            if not rep.holds:
                rec["reproduce"] = shlex.join(["reidemeister", "verify", "--properties",
                                               "random_map_congruence", "--seed", str(corpus.seed)])
            recs.append(rec)
        emit("random_map_congruence", None, recs, time.perf_counter() - t0)

    report.summary = {
        "groups": len(corpus.entries),
        "properties": [p.id for p in props],
        "seed": corpus.seed,
        "max_pairs": corpus.max_pairs,
        "instances": total,
        "failures": failures,
        "verdict": "FAIL" if failures else "PASS",
    }
    if options.timing:
        report.summary["seconds"] = round(time.perf_counter() - t_start, 3)
    return report


def run_single(source: str, prop_id: str, phi_spec: str | None, psi_spec: str | None,
               *, order_cap: int = DEFAULT_ORDER_CAP, seed: int = DEFAULT_SEED) -> dict:
    """Re-run one property instance, as printed in a FAIL record."""
    prop = PROPERTIES[prop_id]
    ctx = GroupContext(CorpusEntry(source), Corpus([], max_order=order_cap, seed=seed))
    if prop.kind == "pair":
        inst = (parse_morphism(ctx.G, phi_spec or "id"), parse_morphism(ctx.G, psi_spec or "id"))
    elif prop.kind == "endo":
        inst = (parse_morphism(ctx.G, psi_spec or "id"),)
    elif prop.kind == "group":
        inst = ()
    else:
        raise ValueError("global properties run over the seeded random maps only")
    return check_instance(prop, ctx, inst)
