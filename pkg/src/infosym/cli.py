"""Command-line front end.

    infosym analyze FILE [--output text|json|csv] [--no-filter] ...
    infosym entropy FILE [--set x1,x2]
    infosym bench DIR
    infosym selftest [--seed N]

Exit codes: 0 ok, 1 parse/input error, 2 resource limit, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .bdd import MAX_VARS
from .entropy import cond_entropy_set, profile
from .errors import InvariantError, LimitError, ParseError
from .io import CSV_HEADER, ReportDocument, csv_row, emit_report, load_circuit, write_csv
from .symmetry import detect, detect_circuit, format_summary

log = logging.getLogger("infosym")

EXIT_OK, EXIT_PARSE, EXIT_LIMIT, EXIT_INTERNAL = 0, 1, 2, 3

CIRCUIT_SUFFIXES = {".pla", ".blif", ".tt"}


def _analyze_spec(spec, use_filter, include_vacuous):
    if len(spec.functions) == 1:
        report = detect(spec.functions[0], use_filter, include_vacuous)
    else:
        report = detect_circuit(spec.functions, use_filter, include_vacuous)
    spec.manager.audit()
    return ReportDocument.build(spec, report)


def _load(args, path):
    spec = load_circuit(path, args.format, max_vars=args.max_vars)
    for w in spec.warnings:
        log.warning("%s: %s", path, w)
    return spec


def cmd_analyze(args) -> int:
    spec = _load(args, args.input)
    doc = _analyze_spec(spec, not args.no_filter, args.include_vacuous)
    sys.stdout.buffer.write(emit_report(doc, args.output, per_output=args.per_output))
    return EXIT_OK


def _resolve_set(spec, text):
    chosen = []
    for token in filter(None, (t.strip() for t in text.split(","))):
        if token in spec.inputs:
            chosen.append(spec.inputs.index(token) + 1)
        elif token[:1] == "x" and token[1:].isdigit() and 1 <= int(token[1:]) <= spec.n:
            chosen.append(int(token[1:]))
        else:
            raise ParseError(f"unknown variable {token!r} in --set")
    return chosen


def cmd_entropy(args) -> int:
    spec = _load(args, args.input)
    chosen = _resolve_set(spec, args.set) if args.set else None
    records = []
    for name, f in zip(spec.outputs, spec.functions):
        prof = profile(f)
        rec = {"output": name, "H": prof.h, "vars": [
            {"var": spec.var_name(r.var), "h0": r.h0, "h1": r.h1, "hcond": r.hcond}
            for r in prof.rows
        ]}
        if chosen is not None:
            rec["set"] = [spec.var_name(v) for v in chosen]
            rec["H_given_set"] = cond_entropy_set(f, chosen)
        records.append(rec)
    if args.output == "json":
        print(json.dumps({"circuit": spec.name, "outputs": records}, sort_keys=True, indent=2))
        return EXIT_OK
    if args.output == "csv":
        rows = [[rec["output"], v["var"], f"{v['h0']:.2f}", f"{v['h1']:.2f}", f"{v['hcond']:.2f}"]
                for rec in records for v in rec["vars"]]
        sys.stdout.write(write_csv(rows, ["output", "var", "h0", "h1", "hcond"]))
        return EXIT_OK
    for rec in records:
        print(f"output {rec['output']}:")
        print(f"  H(f) = {rec['H']:.2f}")
        for v in rec["vars"]:
            print(f"  H(f_{v['var']}') = {v['h0']:.2f}  H(f_{v['var']}) = {v['h1']:.2f}  "
                  f"H(f|{v['var']}) = {v['hcond']:.2f}")
        if "set" in rec:
            print(f"  H(f|{','.join(rec['set'])}) = {rec['H_given_set']:.2f}")
    return EXIT_OK


def _bench_one(path, fmt, max_vars, use_filter, include_vacuous):
    try:
        spec = load_circuit(path, fmt, max_vars=max_vars)
        return _analyze_spec(spec, use_filter, include_vacuous), None
    except (ParseError, LimitError, OSError, ValueError) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def cmd_bench(args) -> int:
    root = Path(args.input)
    if not root.is_dir():
        log.error("%s is not a directory", root)
        return EXIT_PARSE
    files = sorted(p for p in root.iterdir() if p.is_file() and p.suffix.lower() in CIRCUIT_SUFFIXES)
    jobs = [(p, args.format, args.max_vars, not args.no_filter, args.include_vacuous) for p in files]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_bench_one, *zip(*jobs)))
    else:
        results = [_bench_one(*job) for job in jobs]
    rows = []
    for path, (doc, err) in zip(files, results):
        if err is not None:
            log.error("%s: skipped (%s)", path.name, err)
            continue
        rows.append(csv_row(doc))
    if not rows:
        log.error("no parsable circuits in %s", root)
        return EXIT_PARSE
    if args.output == "text":
        for name, ni, no, summary, total, secs in rows:
            print(f"{name:<16} {ni}/{no:<6} {summary or '-':<24} {float(secs):.1f}")
    else:
        sys.stdout.write(write_csv(rows, CSV_HEADER))
    return EXIT_OK


def cmd_selftest(args) -> int:
    """Differential check of the BDD path against the truth-table oracle."""
    from .bdd import Manager
    from .oracle import tt_cond_entropy, tt_detect, tt_entropy

    rng = random.Random(args.seed)
    mismatches = 0
    for _ in range(args.count):
        n = rng.randint(0, args.max_n)
        bits = [rng.getrandbits(1) for _ in range(1 << n)]
        mgr = Manager(n)
        f = mgr.from_truth_table(bits)
        t = mgr.to_truth_table(f)
        bdd_rep = detect(f)
        if bdd_rep.verdicts() != tt_detect(t).verdicts():
            mismatches += 1
            log.error("classification mismatch for %s", t)
        prof = bdd_rep.profile
        if abs(prof.h - tt_entropy(t)) > 1e-12 or any(
            abs(r.hcond - tt_cond_entropy(t, r.var)) > 1e-12 for r in prof.rows
        ):
            mismatches += 1
            log.error("measure mismatch for %s", t)
    print(f"selftest: {args.count} functions, {mismatches} mismatches (seed {args.seed})")
    if mismatches:
        raise InvariantError(f"{mismatches} oracle mismatches")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="infosym", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output_default="text"):
        p.add_argument("input")
        p.add_argument("--format", choices=["auto", "tt", "pla", "blif"], default="auto")
        p.add_argument("--output", choices=["text", "json", "csv"], default=output_default)
        p.add_argument("--max-vars", type=int, default=MAX_VARS)
        p.add_argument("--no-filter", action="store_true", help="run exact checks on every pair")
        p.add_argument("--include-vacuous", action="store_true",
                       help="count symmetries between variables the function ignores")
        p.add_argument("--per-output", action="store_true")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("analyze", help="detect symmetries of a circuit")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("entropy", help="print information measures")
    common(p)
    p.add_argument("--set", help="comma separated variables to condition on jointly")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("bench", help="(S,N) summary and timing for every circuit in a directory")
    common(p, output_default="csv")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selftest", help="randomized comparison against the truth-table oracle")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--max-n", type=int, default=6)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(format="infosym: %(levelname)s: %(message)s", level=logging.WARNING)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_PARSE
    except LimitError as exc:
        log.error("%s", exc)
        return EXIT_LIMIT
    except InvariantError as exc:
        log.error("internal invariant violated: %s", exc)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
