"""Command-line front end.

Exit status: 0 consistent, 1 theorem counterexample or internal
inconsistency at p = 2, 2 input/parse error, 3 cap skip under --strict.
"""
from __future__ import annotations

import argparse
import enum
import json
import os
import sys
import tempfile

from .corpus import builtin, format_corpus, parse_corpus_file, parse_corpus_text, shipped_corpus
from .errors import FusionKitError
from .groups import BACKENDS, is_prime
from .verdicts import (
    SCHEMA_VERSION,
    proof_trace,
    report_document,
    scan_corpus,
    theorem_verdict,
)


class ExitStatus(enum.IntEnum):
    OK = 0
    COUNTEREXAMPLE = 1
    INPUT_ERROR = 2
    SKIPPED_STRICT = 3


class InputError(Exception):
    pass


def resolve_group(text):
    """``builtin:NAME``, ``PATH`` or ``PATH#NAME`` of a corpus file, or ``DEGREE:gen;gen``."""
    try:
        if text.startswith("builtin:"):
            return builtin(text[len("builtin:"):])
        path, _, name = text.partition("#")
        if os.path.exists(path):
            specs = parse_corpus_file(path)
            if name:
                for s in specs:
                    if s.name == name:
                        return s
                raise InputError(f"{path}: no record named {name!r}")
            if len(specs) != 1:
                raise InputError(f"{path}: expected exactly one record, found {len(specs)}"
                                 " (use PATH#NAME)")
            return specs[0]
        deg, sep, gens = text.partition(":")
        if sep and deg.strip().isdigit():
            line = "\t".join(["inline", deg.strip(), gens, ""])
            return parse_corpus_text(line)[0]
    except FusionKitError as exc:
        raise InputError(f"{text}: {exc}") from None
    raise InputError(f"cannot resolve group {text!r} (no such file or builtin)")


def resolve_corpus(text):
    if text == "builtin":
        return shipped_corpus()
    try:
        return parse_corpus_file(text)
    except FusionKitError as exc:
        raise InputError(f"{text}: {exc}") from None


def parse_primes(text):
    try:
        primes = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"bad prime list {text!r}") from None
    bad = [p for p in primes if not is_prime(p)]
    if bad or not primes:
        raise InputError(f"not primes: {bad or text!r}")
    return primes


def atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".fusionkit-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _report_text(r):
    lines = [
        f"group              {r.group} (degree {r.degree}, order {r.order})",
        f"prime              {r.prime} ({r.mode})",
    ]
    if r.skipped:
        lines.append(f"status             skipped: {r.skip_reason}")
        return "\n".join(lines) + "\n"
    lines += [
        f"sylow order        {r.sylow_order} ({r.sylow_classification})",
        f"hypothesis_H       {r.hypothesis_H}",
        f"camina_herzog      {r.camina_herzog}",
        f"consistent         {r.consistent_with_theorem}",
    ]
    cw = r.counterwitnesses
    if "hypothesis_H" in cw:
        lines.append("not conjugate into Z(S): " + ", ".join(cw["hypothesis_H"]))
    if "camina_herzog" in cw:
        lines.append("index divisible by p:    "
                     + ", ".join(f"{x} [{i}]" for x, i in cw["camina_herzog"]))
    for row in r.trace:
        lines.append(f"  {row['name']:<42} {row['status']}")
    for a in r.anomalies:
        lines.append(f"ANOMALY: {a}")
    return "\n".join(lines) + "\n"


def _trace_text(name, rows):
    out = [f"proof trace for {name} (p = 2)"]
    for r in rows:
        line = f"  {r.name:<42} {r.status:<8}"
        if r.witness:
            line += f" {r.witness}"
        if r.note:
            line += f"  [{r.note}]"
        out.append(line)
    return "\n".join(out) + "\n"


def _status_for(reports, strict):
    if any(r.prime == 2 and (r.is_counterexample or r.anomalies) for r in reports):
        return ExitStatus.COUNTEREXAMPLE
    if strict and any(r.skipped for r in reports):
        return ExitStatus.SKIPPED_STRICT
    return ExitStatus.OK


def cmd_check(args):
    spec = resolve_group(args.group)
    G = spec.build(backend=args.backend)
    report = theorem_verdict(G, args.prime, name=spec.name)
    if args.format == "json":
        sys.stdout.write(dump_json(report.to_dict()))
    else:
        sys.stdout.write(_report_text(report))
    return _status_for([report], args.strict)


def cmd_trace(args):
    spec = resolve_group(args.group)
    G = spec.build(backend=args.backend)
    rows = proof_trace(G)
    if args.format == "json":
        sys.stdout.write(dump_json({"schema_version": SCHEMA_VERSION, "group": spec.name,
                                    "prime": 2, "rows": [vars(r) for r in rows]}))
    else:
        sys.stdout.write(_trace_text(spec.name, rows))
    return ExitStatus.OK


def cmd_scan(args):
    corpus = resolve_corpus(args.corpus)
    primes = parse_primes(args.primes)
    if args.jobs < 1:
        raise InputError("--jobs must be at least 1")
    summary, reports = scan_corpus(corpus, primes, args.jobs, backend=args.backend)
    if args.out:
        atomic_write(args.out, dump_json(report_document(summary, reports)))
    if args.format == "json":
        sys.stdout.write(dump_json(summary.to_dict()))
    else:
        sys.stdout.write(f"scanned {summary.corpus_size} groups\n")
        for p, t in summary.per_prime.items():
            sys.stdout.write(
                f"  p={p} [{t['mode']}] reports={t['reports']} skipped={t['skipped']} "
                f"hypothesis_true={t['hypothesis_true']} abelian_sylow={t['abelian_sylow']} "
                f"counterexamples={t['counterexamples']}\n")
        for g, p, a in summary.anomalies:
            sys.stdout.write(f"  ANOMALY {g} p={p}: {a}\n")
        if args.out:
            sys.stdout.write(f"report written to {args.out}\n")
    return _status_for(reports, args.strict)


def cmd_corpus(args):
    sys.stdout.write(format_corpus(shipped_corpus()))
    return ExitStatus.OK


def build_parser():
    ap = argparse.ArgumentParser(prog="fusionkit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--backend", choices=BACKENDS, default="oracle")

    p = sub.add_parser("check", help="theorem verdict for one group")
    p.add_argument("--group", required=True)
    p.add_argument("--prime", type=int, default=2)
    p.add_argument("--strict", action="store_true")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("trace", help="proof trace rows for one group at p = 2")
    p.add_argument("--group", required=True)
    common(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("scan", help="scan a corpus file or the builtin corpus")
    p.add_argument("--corpus", default="builtin")
    p.add_argument("--primes", default="2")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--strict", action="store_true")
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("corpus", help="print the shipped corpus as a corpus file")
    p.set_defaults(func=cmd_corpus)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "prime", None) is not None and not is_prime(args.prime):
            raise InputError(f"{args.prime} is not prime")
        return int(args.func(args))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return int(ExitStatus.INPUT_ERROR)


if __name__ == "__main__":
    sys.exit(main())
