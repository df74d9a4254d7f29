"""Command-line interface: ``reidemeister <subcommand> ...``.

Exit codes: 0 success, 1 a property or check failed, 2 load or usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import chartab, harness
from .errors import LoadError, ReidemeisterError
from .groups import DEFAULT_ORDER_CAP, center, is_solvable
from .io import load_group, morphism_spec, parse_morphism
from .morphisms import classify, enumerate_automorphisms, is_fixed_point_free
from .twisted import METHODS, reidemeister_number, reidemeister_spectrum, twisted_classes

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _out(args, data: dict, text: str) -> None:
    print(json.dumps(data, sort_keys=True) if args.json else text)


def cmd_group(args) -> int:
    G = load_group(args.source, order_cap=args.max_order)
    cc = G.conjugacy
    Z = center(G)
    data = {
        "name": G.name,
        "order": G.order,
        "classes": len(cc),
        "class_sizes": list(cc.class_sizes),
        "center_order": Z.order,
        "abelian": G.is_abelian,
        "solvable": is_solvable(G),
        "exponent": G.exponent,
    }
    text = "\n".join([
        f"group      {G.name}",
        f"order      {G.order}",
        f"classes    {len(cc)}  sizes {list(cc.class_sizes)}",
        f"center     order {Z.order}",
        f"abelian    {G.is_abelian}",
        f"solvable   {data['solvable']}",
        f"exponent   {G.exponent}",
    ])
    _out(args, data, text)
    return EXIT_OK


def cmd_reidemeister(args) -> int:
    G = load_group(args.source, order_cap=args.max_order)
    phi = parse_morphism(G, args.phi)
    psi = parse_morphism(G, args.psi)
    methods = METHODS if args.method == "all" else (args.method,)
    values = {m: reidemeister_number(G, phi, psi, method=m) for m in methods}
    agree = len(set(values.values())) == 1
    data = {"group": G.name, "phi": morphism_spec(phi), "psi": morphism_spec(psi),
            "R": values[methods[0]], "methods": values, "agree": agree}
    lines = [f"R = {values[methods[0]]}"] if len(methods) == 1 else \
        [f"{m:<11} {v}" for m, v in values.items()] + [f"{'agreement':<11} {'yes' if agree else 'NO'}"]
    if args.classes:
        part = twisted_classes(G, phi, psi)
        data["classes"] = [{"representative": G.name_of(r), "size": s}
                           for r, s in zip(part.representatives, part.class_sizes)]
        lines += [f"  [{G.name_of(r)}]  size {s}" for r, s in zip(part.representatives, part.class_sizes)]
    _out(args, data, "\n".join(lines))
    return EXIT_OK if agree else EXIT_FAIL


def cmd_spectrum(args) -> int:
    G = load_group(args.source, order_cap=args.max_order)
    res = reidemeister_spectrum(G, scope=args.scope, cap=args.enumeration_cap)
    data = {"group": G.name, "scope": res.scope, "spectrum": list(res.spectrum),
            "multiplicities": {str(k): v for k, v in res.multiplicities.items()}}
    text = f"Spec_{res.scope}({G.name}) = {{{', '.join(map(str, res.spectrum))}}}\n" + \
        "\n".join(f"  R = {k}: {v} map(s)" for k, v in res.multiplicities.items())
    _out(args, data, text)
    return EXIT_OK


def cmd_chartable(args) -> int:
    G = load_group(args.source, order_cap=args.max_order)
    table = chartab.character_table(G)
    data = chartab.export_table(table)
    status = EXIT_OK
    if args.check:
        problems = chartab.check_table(table)
        degsq = sum(d * d for d in table.degrees)
        if degsq != G.order:
            problems.append(f"sum of squared degrees {degsq} != {G.order}")
        data["check"] = {"ok": not problems, "problems": problems}
        status = EXIT_OK if not problems else EXIT_FAIL
    if args.json:
        print(json.dumps(data, sort_keys=True))
        return status
    C = table.to_complex()
    cc = G.conjugacy
    print(f"character table of {G.name} ({len(table)} irreducibles, conductor {table.field.e})")
    print("class      " + " ".join(f"{G.name_of(r):>9.9}" for r in cc.representatives))
    print("size       " + " ".join(f"{s:>9}" for s in cc.class_sizes))
    for i, row in enumerate(C):
        print(f"chi_{i:<6} " + " ".join(f"{_fmt(z):>9}" for z in row))
    if args.check:
        print("check: " + ("ok" if not data["check"]["problems"] else "; ".join(data["check"]["problems"])))
    return status


def _fmt(z: complex) -> str:
    re_, im = round(z.real, 3) + 0.0, round(z.imag, 3) + 0.0
    if abs(im) < 1e-9:
        return f"{re_:g}"
    return f"{re_:g}{im:+g}i"


def _corpus(args) -> harness.Corpus:
    if args.group:
        return harness.Corpus([harness.CorpusEntry(s) for s in args.group], max_order=args.max_order,
                              max_pairs=args.max_pairs, seed=args.seed)
    if args.corpus:
        return harness.load_corpus(args.corpus, seed=args.seed, max_pairs=args.max_pairs,
                                   max_order=args.max_order)
    return harness.default_corpus(seed=args.seed, max_pairs=args.max_pairs, max_order=args.max_order)


def cmd_verify(args) -> int:
    props = args.properties.split(",") if args.properties else None
    if props:
        unknown = [p for p in props if p not in harness.PROPERTIES]
        if unknown:
            raise LoadError(f"unknown properties {unknown}; known: {', '.join(harness.PROPERTIES)}")
    if args.phi or args.psi:
        if not (args.group and len(args.group) == 1 and props and len(props) == 1):
            raise LoadError("--phi/--psi need exactly one --group and one --properties entry")
        rec = harness.run_single(args.group[0], props[0], args.phi, args.psi,
                                 order_cap=args.max_order, seed=args.seed)
        print(json.dumps(rec, sort_keys=True))
        return EXIT_OK if rec["verdict"] == "PASS" else EXIT_FAIL
    corpus = _corpus(args)
    progress = (lambda msg: print(msg, file=sys.stderr)) if args.verbose else None
    report = harness.run_verification(
        corpus, harness.RunOptions(props, per_instance=args.per_instance, timing=args.timing), progress)
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        for line in report.lines():
            out.write(line + "\n")
    finally:
        if args.output:
            out.close()
    return EXIT_OK if report.failures == 0 else EXIT_FAIL


def cmd_fpf(args) -> int:
    corpus = _corpus(args)
    rows, status = [], EXIT_OK
    for entry in corpus.entries:
        G = load_group(entry.source, order_cap=args.max_order)
        autos = list(enumerate_automorphisms(G))
        fpf = [a for a in autos if is_fixed_point_free(a)]
        solvable = is_solvable(G)
        obstruction = chartab.fpf_obstruction(G)
        consistent = (not fpf or solvable) and not (obstruction and fpf)
        if not consistent:
            status = EXIT_FAIL
        rows.append({"group": entry.source, "order": G.order, "automorphisms": len(autos),
                     "fpf": [morphism_spec(a) for a in fpf], "solvable": solvable,
                     "obstruction": obstruction, "consistent": consistent})
    if args.json:
        for r in rows:
            print(json.dumps(r, sort_keys=True))
    else:
        for r in rows:
            mark = "ok" if r["consistent"] else "INCONSISTENT"
            print(f"{r['group']:<32} |Aut|={r['automorphisms']:<5} fpf={len(r['fpf']):<4} "
                  f"solvable={r['solvable']!s:<5} obstruction={r['obstruction']!s:<5} {mark}")
    return status


def cmd_congruence(args) -> int:
    from . import congruence
    G = load_group(args.source, order_cap=args.max_order)
    psi = parse_morphism(G, args.psi)
    seq = congruence.reidemeister_power_sequence(psi, args.n)
    thetas = {t.name: t for t in congruence.STANDARD_THETAS}
    chosen = [thetas[t] for t in args.theta.split(",")] if args.theta else list(thetas.values())
    rows, ok = [], True
    for theta in chosen:
        for n in range(1, args.n + 1):
            rep = congruence.gauss_congruence(G, psi, n, theta, sequence=seq)
            ok = ok and rep.holds
            rows.append({"theta": theta.name, "n": n, "sum": rep.total, "holds": rep.holds})
    primes = [p for p in (2, 3, 5, 7, 11) if p <= args.n]
    prime_rows = []
    for p in primes:
        rep = congruence.PrimeCongruenceReport(p, seq[0], seq[p - 1])
        ok = ok and rep.holds
        prime_rows.append({"p": p, "R(psi)": rep.r_psi, "R(psi^p)": rep.r_psi_p, "holds": rep.holds})
    data = {"group": G.name, "psi": morphism_spec(psi), "R(psi^d)": seq, "gauss": rows,
            "prime": prime_rows, "holds": ok}
    text = [f"R(psi^d), d = 1..{args.n}: {seq}"]
    text += [f"  {r['theta']:<10} n={r['n']:<3} sum={r['sum']:<8} {'ok' if r['holds'] else 'FAIL'}" for r in rows]
    text += [f"  R(psi^{r['p']}) = {r['R(psi^p)']} vs R(psi) = {r['R(psi)']} mod {r['p']}: "
             f"{'ok' if r['holds'] else 'FAIL'}" for r in prime_rows]
    _out(args, data, "\n".join(text))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_morphism(args) -> int:
    G = load_group(args.source, order_cap=args.max_order)
    psi = parse_morphism(G, args.psi)
    c = classify(psi)
    data = {"group": G.name, "psi": morphism_spec(psi), **c.__dict__}
    _out(args, data, "\n".join(f"{k:<20} {v}" for k, v in data.items()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    def flags(suppress: bool) -> argparse.ArgumentParser:
        # sub-command copies must not overwrite values given before the sub-command
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        f = argparse.ArgumentParser(add_help=False)
        f.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
        f.add_argument("--seed", type=int, default=d(harness.DEFAULT_SEED), help="sampling seed")
        f.add_argument("--max-order", type=int, default=d(DEFAULT_ORDER_CAP), help="largest group order accepted")
        f.add_argument("--max-pairs", type=int, default=d(harness.DEFAULT_MAX_PAIRS),
                       help="endomorphism pairs sampled per group")
        return f

    common = flags(suppress=True)

    p = _Parser(prog="reidemeister", description="Bi-twisted conjugacy on finite groups.",
                parents=[flags(suppress=False)])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("group", parents=[common], help="summarise a group")
    s.add_argument("source", help="group JSON file or builtin:family[:params]")
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("reidemeister", parents=[common], help="compute R(phi, psi)")
    s.add_argument("source")
    s.add_argument("phi", help="id, trivial, inner:h, gens:a=b,..., image:..., or a JSON file")
    s.add_argument("psi")
    s.add_argument("--method", choices=METHODS + ("all",), default="orbits")
    s.add_argument("--classes", action="store_true", help="list class representatives and sizes")
    s.set_defaults(func=cmd_reidemeister)

    s = sub.add_parser("spectrum", parents=[common], help="Reidemeister spectrum over Aut or End")
    s.add_argument("source")
    s.add_argument("--scope", choices=("Aut", "End"), default="Aut")
    s.add_argument("--enumeration-cap", type=int, default=100_000)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("chartable", parents=[common], help="character table (JSON with --json)")
    s.add_argument("source")
    s.add_argument("--check", action="store_true", help="re-verify orthogonality")
    s.set_defaults(func=cmd_chartable)

    listing = "\n".join(f"  {p.id:<28} {p.description}" for p in harness.PROPERTIES.values())
    s = sub.add_parser("verify", parents=[common], help="run the property suite over a corpus",
                       epilog="properties:\n" + listing, formatter_class=argparse.RawDescriptionHelpFormatter)
    s.add_argument("corpus", nargs="?", help="corpus JSON file (default: built-in corpus)")
    s.add_argument("--group", action="append", help="verify just these group sources (repeatable)")
    s.add_argument("--properties", help="comma-separated property ids")
    s.add_argument("--phi", help="single-instance mode: phi spec")
    s.add_argument("--psi", help="single-instance mode: psi spec")
    s.add_argument("--per-instance", action="store_true", help="one record per instance")
    s.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    s.add_argument("--output", "-o", help="write the report here instead of stdout")
    s.add_argument("--verbose", "-v", action="store_true", help="progress on stderr")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("fpf", parents=[common], help="fixed-point-free automorphisms per group")
    s.add_argument("corpus", nargs="?", help="corpus JSON file (default: built-in corpus)")
    s.add_argument("--group", action="append", help="group sources (repeatable)")
    s.set_defaults(func=cmd_fpf)

    s = sub.add_parser("congruence", parents=[common], help="Gauss and prime congruences for R(psi^d)")
    s.add_argument("source")
    s.add_argument("psi")
    s.add_argument("-n", type=int, default=12, help="largest n")
    s.add_argument("--theta", help="comma-separated subset of euler_phi,moebius,jordan(2)")
    s.set_defaults(func=cmd_congruence)

    s = sub.add_parser("morphism", parents=[common], help="classify an endomorphism")
    s.add_argument("source")
    s.add_argument("psi")
    s.set_defaults(func=cmd_morphism)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ReidemeisterError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
