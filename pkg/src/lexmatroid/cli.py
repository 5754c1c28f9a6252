"""Command-line entry point.

Exit codes: 0 success, 1 usage or parse error, 2 invalid matroid input,
3 a check or verification found failures.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from .constructor import RankUnsupported, construct
from .enumeration import (
    RevlexRecord,
    based_matroids,
    enumerate_up_to,
    parse_revlex,
    read_database,
    write_database,
)
from .gamma import label_family
from .matroid import ExchangeViolation, Matroid, MatroidError, elements, f_vector, new_matroid, to_mask
from .oseq import check_conditions, format_table
from .shelling import BasedMatroid, h_vector, lex_shelling, lex_smallest_basis
from .verifier import run_full_verification

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _fmt(mask: int) -> str:
    return "{" + ",".join(map(str, elements(mask))) + "}"


def _labels(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise UsageError(f"bad label list {text!r}") from exc


def read_matroid(path: str) -> Matroid:
    """Read a matroid JSON object or a single revlex line ``n r indicator``."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
            return new_matroid(int(obj["n"]), obj["bases"])
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise UsageError(f"{path}: not a matroid JSON object ({exc})") from exc
    records = read_database(stripped.splitlines())
    if len(records) != 1:
        raise UsageError(f"{path}: expected one revlex record, found {len(records)}")
    return parse_revlex(records[0])


def based_from_args(m: Matroid, base_arg: str | None, order_arg: str | None) -> BasedMatroid:
    base = _labels(base_arg)
    base_mask = to_mask(base) if base else lex_smallest_basis(m)
    order = _labels(order_arg)
    if order is None:
        order = list(elements(m.ground & ~base_mask))
    return BasedMatroid(m, base_mask, tuple(order))


def _family_json(fam: dict[int, tuple]) -> list[dict]:
    keys = sorted(fam, key=lambda s: (len(elements(s)), elements(s)))
    return [{"I": list(elements(s)), "h": list(fam[s])} for s in keys]


# -- verbs ---------------------------------------------------------------------


def cmd_validate(args) -> int:
    try:
        m = read_matroid(args.file)
    except ExchangeViolation as exc:
        b1, b2, x = exc.b1, exc.b2, exc.x
        print(f"invalid: exchange fails for B1={_fmt(b1)}, B2={_fmt(b2)}, x={x}")
        return EXIT_INVALID
    except MatroidError as exc:
        print(f"invalid: {exc}")
        return EXIT_INVALID
    print(f"valid: n={m.n} rank={m.rank} bases={len(m.bases)}")
    return EXIT_OK


def cmd_hvector(args) -> int:
    m = read_matroid(args.file)
    f, h = f_vector(m), h_vector(m)
    if args.format == "json":
        print(json.dumps({"f": list(f), "h": list(h)}))
    else:
        print("f = (" + ",".join(map(str, f)) + ")")
        print("h = (" + ",".join(map(str, h)) + ")")
    return EXIT_OK


def cmd_shell(args) -> int:
    bm = based_from_args(read_matroid(args.file), args.base, args.order)
    sr = lex_shelling(bm)
    if args.format == "json":
        rows = [{"B": list(elements(b)), "R": list(elements(r))} for b, r in zip(sr.ordered_bases, sr.restriction_sets)]
        print(json.dumps({"vertex_order": list(bm.vertex_order), "shelling": rows}))
        return EXIT_OK
    print("vertex order: " + ",".join(map(str, bm.vertex_order)))
    width = max(len(_fmt(b)) for b in sr.ordered_bases)
    for b, r in zip(sr.ordered_bases, sr.restriction_sets):
        print(f"{_fmt(b):<{width}}  R = {_fmt(r)}")
    return EXIT_OK


def cmd_gammas(args) -> int:
    bm = based_from_args(read_matroid(args.file), args.base, None)
    fam = label_family(bm.matroid, bm.base)
    if args.format == "json":
        print(json.dumps(_family_json(fam)))
        return EXIT_OK
    rows = [("I", "h(Gamma_I)")] + [
        (_fmt(s), "(" + ",".join(map(str, fam[s])) + ")")
        for s in sorted(fam, key=lambda s: (len(elements(s)), elements(s)))
    ]
    width = max(len(r[0]) for r in rows)
    for a, b in rows:
        print(f"{a:<{width}} | {b}")
    return EXIT_OK


def cmd_construct(args) -> int:
    bm = based_from_args(read_matroid(args.file), args.base, args.order)
    o = construct(bm)
    if args.format == "json":
        print(json.dumps(o.to_json()))
    else:
        print(format_table(bm, o))
    return EXIT_OK


def cmd_check(args) -> int:
    bm = based_from_args(read_matroid(args.file), args.base, args.order)
    o = construct(bm)
    report = check_conditions(bm, o)
    if args.format == "json":
        print(json.dumps({"ideal": o.to_json(), "checks": report.witnesses, "passed": report.passed}))
    else:
        print(format_table(bm, o))
        print()
        print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_enumerate(args) -> int:
    corpus = enumerate_up_to(args.rank, args.max_n)
    by_size = corpus.by_size()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for n in sorted(by_size):
            with open(out / f"r{args.rank}n{n}.txt", "w") as fh:
                fh.write(f"# rank {args.rank} matroids on {n} elements, one per isomorphism class\n")
                write_database(fh, [m for m in corpus.matroids if m.n == n])
    for n in sorted(by_size):
        print(f"n={n}: {by_size[n]}")
    print(f"classes: {len(corpus.matroids)}")
    if args.signatures:
        based_matroids(corpus)
        print(f"signatures: {len(corpus.based)}")
    return EXIT_OK


def cmd_parse_db(args) -> int:
    try:
        with open(args.file) as fh:
            records: list[RevlexRecord] = read_database(fh)
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    counts: dict[tuple[int, int], int] = {}
    bad = 0
    for rec in records:
        try:
            parse_revlex(rec)
        except MatroidError as exc:
            bad += 1
            print(f"invalid record {rec.to_line()[:60]}: {exc}", file=sys.stderr)
            continue
        counts[rec.n, rec.r] = counts.get((rec.n, rec.r), 0) + 1
    for (n, r), c in sorted(counts.items()):
        print(f"n={n} r={r}: {c}")
    print(f"records: {len(records)}, invalid: {bad}")
    return EXIT_INVALID if bad else EXIT_OK


def cmd_verify_all(args) -> int:
    report = run_full_verification(args.rank, jobs=args.jobs)
    print(report.summary())
    if args.out:
        Path(args.out).write_text(report.dumps())
    return EXIT_OK if report.clean else EXIT_FAILED


# -- parser --------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lexmatroid", description="Lexicographic shellings and pure order ideals of matroids.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, func, help, file=True, base=False, order=False, fmt=False):
        s = sub.add_parser(name, help=help)
        if file:
            s.add_argument("file", help="matroid JSON, a revlex line, or - for stdin")
        if base:
            s.add_argument("--base", help="comma-separated basis labels (default: lex smallest)")
        if order:
            s.add_argument("--order", help="comma-separated order of the non-base elements")
        if fmt:
            s.add_argument("--format", choices=("table", "json"), default="table")
        s.set_defaults(func=func)
        return s

    verb("validate", cmd_validate, "check the basis exchange axiom")
    verb("hvector", cmd_hvector, "print f- and h-vectors", fmt=True)
    verb("shell", cmd_shell, "print the lexicographic shelling", base=True, order=True, fmt=True)
    verb("gammas", cmd_gammas, "print the restricted h-vector table", base=True, fmt=True)
    verb("construct", cmd_construct, "emit the order ideal", base=True, order=True, fmt=True)
    verb("check", cmd_check, "construct and check all conditions", base=True, order=True, fmt=True)

    e = verb("enumerate", cmd_enumerate, "enumerate isomorphism classes", file=False)
    e.add_argument("--rank", type=int, required=True)
    e.add_argument("--max-n", type=int, required=True)
    e.add_argument("--out", help="directory for revlex database files")
    e.add_argument("--signatures", action="store_true", help="also count based-matroid signatures")

    verb("parse-db", cmd_parse_db, "validate a revlex database file")

    v = verb("verify-all", cmd_verify_all, "enumerate and verify every signature", file=False)
    v.add_argument("--rank", type=int, required=True)
    v.add_argument("--jobs", type=int, default=None)
    v.add_argument("--out", help="write the JSON report here")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"lexmatroid: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lexmatroid: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RankUnsupported as exc:
        print(f"lexmatroid: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MatroidError as exc:
        print(f"lexmatroid: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
