"""Command line front end.

A system argument is either literal text (``"0(2),0(3),1(4)"``), a path to a
text or JSON file, ``@name`` for a corpus entry, or ``-`` for stdin.

Exit codes: 0 all checks passed, 2 a property failed, 3 a precondition or
the input was rejected, 4 a resource ceiling was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import characterizations as ch
from . import corpus, extremal, search, subset_sums
from .arith import as_rational, format_rational
from .cyclotomic import cyclotomic_poly, lemma_3_2_check
from .errors import CoverToolError, PreconditionFailed
from .report import (
    EXIT_FAIL,
    EXIT_OK,
    EXIT_PRECONDITION,
    REPORT_SCHEMA,
    Report,
    run_full_analysis,
)
from .subset_sums import WeightedSystem
from .systems import DEFAULT_SIEVE_CEILING, System, check_duality, classify, covering_profile, dual
from .textio import format_system, parse_system


def read_system(spec: str) -> System:
    if spec == "-":
        return parse_system(sys.stdin.read())
    if spec.startswith("@"):
        return corpus.load(spec[1:])
    path = Path(spec)
    if path.suffix in (".json", ".txt") or ("(" not in spec and path.is_file()):
        return parse_system(path.read_text())
    return parse_system(spec)


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def _alpha(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"alpha must be an exact rational u/v: {exc}") from None


def _headed(system: System) -> System:
    if system.distinguished:
        return system
    if not system.classes:
        raise PreconditionFailed("needs at least one class to act as the distinguished class")
    return System(system.classes, distinguished=True)


def _weighted(system: System, weights) -> WeightedSystem:
    return WeightedSystem(system, _int_list(weights) if weights else None)


def _emit(args, report: Report) -> int:
    if args.json:
        print(report.to_json(indent=2))
    else:
        print(report.format_text())
    return report.exit_code


def _simple(args, command: str, system: System, check: str, fn) -> int:
    start = time.perf_counter()
    report = Report(command, format_system(system))
    verdict = report.run(check, fn)
    report.timing_ms = (time.perf_counter() - start) * 1000
    code = _emit(args, report)
    # a lone check that could not run is a precondition failure
    return EXIT_PRECONDITION if verdict.status == "skipped" else code


def cmd_analyze(args):
    system = read_system(args.system)
    alphas = [args.alpha] if args.alpha is not None else None
    return _emit(args, run_full_analysis(system, alphas, args.max_sieve))


def cmd_classify(args):
    system = read_system(args.system)

    def fn():
        p = covering_profile(system, args.max_sieve)
        c = classify(system, args.m, args.max_sieve)
        return True, {"period": p.period, "min": p.min_multiplicity, "max": p.max_multiplicity,
                      "average": p.average, "m_cover": c.is_m_cover,
                      "exact_m_cover": c.is_exact_m_cover, "m_system": c.is_m_system}

    return _simple(args, "classify", system, f"classify[m={args.m}]", fn)


def cmd_dual(args):
    system = read_system(args.system)
    d = dual(system)
    if args.json:
        print(json.dumps({"dual": format_system(d), "k": d.k,
                          "duality": check_duality(system, args.max_sieve)}))
    else:
        print(format_system(d))
    return EXIT_OK


def _sums_payload(table, verdict) -> dict:
    return {
        "values": [
            {"v": format_rational(c.value), "count": c.count, "csum_zero": c.csum_zero,
             "witnesses": [sorted(w) for w in c.witness_sets()]}
            for c in table
        ],
        "verdict": verdict,
    }


def cmd_sums(args):
    system = read_system(args.system)
    W = _weighted(system, args.weights)
    table = subset_sums.build_sum_table(W, args.witness_cap)
    total = sum(c.count for c in table)
    verdict = "partition-ok" if total == 2**W.k else "partition-broken"
    if args.json:
        print(json.dumps(_sums_payload(table, verdict), indent=2))
    else:
        for c in table:
            ws = " ".join("{" + ",".join(map(str, sorted(w))) + "}" for w in c.witness_sets()[:6])
            print(f"{format_rational(c.value):>8}  count={c.count:<4} csum={c.csum}  "
                  f"{'zero' if c.csum_zero else 'nonzero'}  {ws}")
        print(verdict)
    return EXIT_OK if total == 2**W.k else EXIT_FAIL


def cmd_thm11(args):
    system = _headed(read_system(args.system))
    W = _weighted(system, args.weights)
    rep = subset_sums.theorem_1_1_report(W, args.alpha, ceiling=args.max_sieve)
    if args.json:
        payload = {
            "values": [
                {"v": format_rational(r.value), "a": r.a, "count": r.count, "bound": r.bound,
                 "csum_zero": r.csum_zero, "witnesses": [sorted(w) for w in r.witnesses]}
                for r in rep.rows
            ],
            "verdict": rep.branch,
            "alpha": format_rational(rep.alpha),
            "m": rep.m,
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"alpha={format_rational(rep.alpha)}  m={rep.m}  n0={rep.n0}  branch={rep.branch}")
        for r in rep.rows:
            ws = " ".join("{" + ",".join(map(str, sorted(w))) + "}" for w in r.witnesses[:6])
            print(f"  a={r.a:<3} v={format_rational(r.value):>7} count={r.count:<4} "
                  f"bound={r.bound:<4} csum={'0' if r.csum_zero else '≠0'}  {ws}")
    return EXIT_OK


def cmd_cor11(args):
    system = _headed(read_system(args.system))
    return _simple(args, "cor11", system, "cor11",
                   lambda: _counting(subset_sums.corollary_1_1_check(system, args.max_sieve)))


def _counting(r):
    return r.holds, {"m": r.m, "rows": r.rows, "counterexample": r.counterexample}


def cmd_cor12(args):
    system = read_system(args.system)
    return _simple(args, "cor12", system, "cor12",
                   lambda: _counting(subset_sums.corollary_1_2_check(system, args.max_sieve)))


def cmd_cor13(args):
    system = _headed(read_system(args.system))
    W = _weighted(system, args.weights)

    def fn():
        r = subset_sums.corollary_1_3_check(W, _int_list(args.J), args.max_sieve)
        return True, {"unique": r.unique, "value": r.value, "fractions_fit": r.fractions_fit, "reaches_m": r.reaches_m}

    return _simple(args, "cor13", system, "cor13", fn)


def cmd_cor14(args):
    system = read_system(args.system)
    m = args.m if args.m is not None else covering_profile(system, args.max_sieve).min_multiplicity

    def fn():
        r = subset_sums.corollary_1_4_check(system, m, args.r, args.max_sieve)
        return True, {"alt1": r.alt1, "alt2": r.alt2, "l": r.l, "r": r.r}

    return _simple(args, "cor14", system, f"cor14[m={m},r={args.r}]", fn)


def cmd_lemma21(args):
    system = read_system(args.system)
    W = _weighted(system.without_head(), args.weights)

    def fn():
        cert = ch.lemma_2_1_certificate(W, args.m, args.max_sieve)
        detail = {"divides": cert.divides, "coprime": cert.coprime,
                  "min_multiplicity": min(cert.multiplicities)}
        if system.period <= 48:
            detail["literal_division"] = ch.lemma_2_1_polynomial(W, args.m)
        return cert.divides, detail

    return _simple(args, "cert-lemma21", system, f"lemma21[m={args.m}]", fn)


def _iff(fn, args, system, name):
    return _simple(args, name, system, f"{name}[m={args.m}]", lambda: (fn(), None))


def cmd_thm13(args):
    system = read_system(args.system)
    return _iff(lambda: ch.theorem_1_3_check(system, args.m, args.max_sieve), args, system, "thm13")


def cmd_thm31(args):
    system = read_system(args.system)
    return _iff(lambda: ch.theorem_3_1_check(system, args.m, args.max_sieve), args, system, "thm31")


def cmd_lemma31(args):
    system = read_system(args.system)
    W = _weighted(system.without_head(), args.weights)
    return _iff(lambda: ch.lemma_3_1_check(W, args.m, args.max_sieve), args, system, "lemma31")


def cmd_cor15(args):
    system = read_system(args.system)
    return _simple(args, "cor15", system, "cor15", lambda: (ch.corollary_1_5_check(system, args.max_sieve), None))


def cmd_cor31(args):
    system = read_system(args.system)
    return _iff(lambda: ch.corollary_3_1_check(system, args.m, args.max_sieve), args, system, "cor31")


def cmd_thm12(args):
    system = read_system(args.system)

    def fn():
        r = extremal.theorem_1_2_check(system, args.m, args.max_sieve)
        return True, {"density": r.density, "bound": r.bound, "equality": r.equality,
                      "extremal_form": r.extremal_form}

    return _simple(args, "thm12", system, f"thm12[m={args.m}]", fn)


def cmd_dsemigroup(args):
    member = extremal.d_membership(args.n, args.t)
    if args.json:
        print(json.dumps({"n": args.n, "t": args.t, "member": member}))
    else:
        print(f"{args.t} {'∈' if member else '∉'} D({args.n})")
    return EXIT_OK


def cmd_newman_znam(args):
    system = read_system(args.system)
    return _simple(args, "newman-znam", system, "newman_znam",
                   lambda: (extremal.newman_znam_check(system, args.max_sieve), None))


def cmd_classical(args):
    system = read_system(args.system)

    def fn():
        r = extremal.classical_disjoint_checks(system, args.max_sieve)
        return all(v is not False for v in (r.dmnr, r.erdos62)), {"dmnr": r.dmnr, "erdos62": r.erdos62}

    return _simple(args, "classical", system, "classical", fn)


def cmd_enumerate(args):
    space = search.SearchSpace(
        k=args.k, max_modulus=args.max, min_modulus=args.min, disjoint=args.disjoint,
        cover=1 if args.cover else None, exact_cover=args.exact, m_system=args.m_system,
        distinct_moduli=args.distinct,
    )
    start = time.perf_counter()
    count = 0
    for system in search.enumerate_systems(space, args.work_ceiling):
        count += 1
        if not args.json:
            print(format_system(system))
    summary = {"k": args.k, "max_modulus": args.max, "count": count,
               "timing_ms": (time.perf_counter() - start) * 1000}
    print(json.dumps(summary), file=sys.stdout if args.json else sys.stderr)
    return EXIT_OK


def cmd_conjecture(args):
    start = time.perf_counter()
    r = search.conjecture_1_1_scan(args.k, args.max, exhaustive=not args.pruned, work_ceiling=args.work_ceiling)
    payload = {
        "k": r.k, "max_modulus": r.max_modulus, "verified": r.verified,
        "counterexamples": [format_system(s) for s in r.counterexamples],
        "systems_checked": r.systems_checked, "exhaustive": r.exhaustive,
        "note": f"bounded scan: moduli <= {r.max_modulus}",
        "timing_ms": (time.perf_counter() - start) * 1000,
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for s in r.counterexamples:
            print(format_system(s))
        print(json.dumps(payload))
    return EXIT_OK if r.verified else EXIT_FAIL


def cmd_cyclo(args):
    poly = cyclotomic_poly(args.n)
    ok = all(lemma_3_2_check(args.n, l) for l in range(args.n))
    print(f"Phi_{args.n}(x) = {poly}")
    print(f"subset root sums over [1,{args.n}): {'all equal (-1)^l' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_corpus(args):
    for name in corpus.names():
        e = corpus.entry(name)
        print(f"@{name:<22} {format_system(corpus.load(name)):<32} {e.get('description', '')}")
    return EXIT_OK


def cmd_schema(args):
    print(json.dumps(REPORT_SCHEMA, indent=2))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors share the exit code of rejected input, not argparse's 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PRECONDITION, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-sieve", type=int, default=DEFAULT_SIEVE_CEILING,
                        help="largest lcm the covering sieve accepts")
    common.add_argument("--work-ceiling", type=int, default=None,
                        help="search node budget (default: $COVERTOOL_WORK_CEILING or 10^8)")

    parser = _Parser(prog="covertool", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, system=True, m=False, weights=False):
        p = sub.add_parser(name, help=help, parents=[common])
        if system:
            p.add_argument("system", help="a(n) list, file, @corpus-name or -")
        if m:
            p.add_argument("--m", type=int, required=True)
        if weights:
            p.add_argument("--weights", help="comma-separated positive integers m_1..m_k")
        p.set_defaults(func=func)
        return p

    p = add("analyze", cmd_analyze, "run every applicable check")
    p.add_argument("--alpha", type=_alpha, help="restrict the dichotomy to one alpha u/v")
    add("classify", cmd_classify, "m-cover / exact / m-system flags", m=True)
    add("dual", cmd_dual, "print the dual system")
    p = add("sums", cmd_sums, "subset sums with counts and signed root sums", weights=True)
    p.add_argument("--witness-cap", type=int, default=subset_sums.DEFAULT_WITNESS_CAP)
    p = add("thm11", cmd_thm11, "vanishing/counting dichotomy at alpha", weights=True)
    p.add_argument("--alpha", type=_alpha, default=Fraction(0))
    add("cor11", cmd_cor11, "unit-weight counting bound")
    add("cor12", cmd_cor12, "tuple counting bound for m-systems")
    p = add("cor13", cmd_cor13, "unique subset sum inequalities", weights=True)
    p.add_argument("--J", required=True, help="comma-separated 1-based indices")
    p = add("cor14", cmd_cor14, "top-block alternative for m-covers")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    add("cert-lemma21", cmd_lemma21, "polynomial divisibility certificate", m=True, weights=True)
    add("thm13", cmd_thm13, "m-system test by S(n, alpha)", m=True)
    add("thm31", cmd_thm31, "m-system test by the tuple identity", m=True)
    add("lemma31", cmd_lemma31, "m-cover test by the subset identity", m=True, weights=True)
    add("cor15", cmd_cor15, "disjoint-system identity")
    add("cor31", cmd_cor31, "m-system binomial identity", m=True)
    add("thm12", cmd_thm12, "extremal density bound", m=True)
    p = add("dsemigroup", cmd_dsemigroup, "membership of t in D(n)", system=False)
    p.add_argument("n", type=int)
    p.add_argument("t", type=int)
    add("newman-znam", cmd_newman_znam, "top-block size in exact covers")
    add("classical", cmd_classical, "classical facts on disjoint systems")
    p = add("enumerate", cmd_enumerate, "list canonical systems", system=False)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--min", type=int, default=1)
    p.add_argument("--disjoint", action="store_true")
    p.add_argument("--cover", action="store_true")
    p.add_argument("--exact", type=int, default=None, metavar="M")
    p.add_argument("--m-system", type=int, default=None, metavar="M")
    p.add_argument("--distinct", action="store_true", help="distinct moduli")
    p = add("conjecture", cmd_conjecture, "bounded scan for the gcd conjecture", system=False)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--pruned", action="store_true", help="generate only potential violators")
    p = add("cyclo", cmd_cyclo, "cyclotomic polynomial and subset root sums", system=False)
    p.add_argument("n", type=int)
    add("corpus", cmd_corpus, "list named systems", system=False)
    add("schema", cmd_schema, "print the report JSON schema", system=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CoverToolError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
