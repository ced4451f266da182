"""Command line entry point: ``vanishing verify ...``.

Exit codes: 0 when every record passed or was skipped, 1 when any check
failed, 2 on operational errors (bad corpus, bad arguments, unwritable output).
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .characters import CHAR_CAP
from .corpus import CorpusEntry, CorpusError, builtin_corpus_entries, load_manifest
from .group import GroupError
from .verify import build_report, emit_report, group_summary, parse_suite, render_json, render_markdown, run_suite

log = logging.getLogger("vanishing")

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _verify_entry(args: tuple[CorpusEntry, list[str], int]):
    entry, suite, char_cap = args
    G = entry.build()
    return group_summary(G), run_suite(G, suite, char_cap=char_cap)


def _entries(corpus: str, max_order: int) -> list[CorpusEntry]:
    if corpus == "builtin":
        return builtin_corpus_entries(max_order)
    entries = load_manifest(corpus)
    return [e for e in entries if e.order is None or e.order <= max_order]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vanishing", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log per-group progress")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run the check suite over a corpus and write a report")
    v.add_argument("--corpus", default="builtin", help='manifest path, or "builtin"')
    v.add_argument("--max-order", type=int, default=1024)
    v.add_argument("--suite", default="all", help='"all" or a comma-separated list of checkIds')
    v.add_argument("--format", choices=("json", "markdown"), default="json")
    v.add_argument("--out", default="-", help="report path; '-' writes to stdout")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--char-cap", type=int, default=CHAR_CAP, help="largest order for character tables")
    return parser


def cmd_verify(ns: argparse.Namespace) -> int:
    try:
        suite = parse_suite(ns.suite)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if ns.out != "-":
        parent = Path(ns.out).parent
        if not parent.is_dir() or Path(ns.out).is_dir():
            print(f"error: cannot write report to {ns.out}", file=sys.stderr)
            return EXIT_ERROR
    try:
        entries = _entries(ns.corpus, ns.max_order)
    except (CorpusError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    work = [(e, suite, ns.char_cap) for e in entries]
    try:
        if ns.jobs > 1:
            with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
                results = list(pool.map(_verify_entry, work))
        else:
            results = []
            for item in work:
                log.info("verifying %s", item[0].name)
                results.append(_verify_entry(item))
    except GroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    corpus = {"source": ns.corpus, "maxOrder": ns.max_order, "groupCount": len(entries)}
    report = build_report(results, suite, corpus)
    if not report.records:
        print("error: corpus is empty", file=sys.stderr)
        return EXIT_ERROR
    if ns.out == "-":
        sys.stdout.write(render_json(report) if ns.format == "json" else render_markdown(report) + "\n")
    else:
        try:
            emit_report(report, ns.format, ns.out)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
    counts = report.counts()
    print(", ".join(f"{k}={v}" for k, v in counts.items()), file=sys.stderr)
    for cid in report.vacuous():
        print(f"{cid}: vacuous", file=sys.stderr)
    return EXIT_FAIL if report.failed else EXIT_OK


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(message)s")
    if ns.command == "verify":
        return cmd_verify(ns)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
