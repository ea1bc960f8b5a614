"""Command-line entry point: ``cadential <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import dot
from .analyze import AnalysisConfig, MatchMode, analyze, report_to_dict, report_to_text
from .cadence import (
    Arity, Tonality, minimal_cadential_sets, region_of, verify_enumeration, verify_not_minimal,
)
from .chordsym import (
    SHARP_KEYS, ChordSymbolError, ContradictoryAlterations, EmptySheet, ParseError,
    load_leadsheet, parse_chord, realize_chord, spell, spelling_pc,
)
from .modulation import DEFAULT_PIVOT_TABLE, PivotTableError, common_degree_chords, load_pivot_table
from .pitch import chord_name, pc
from .transform import (
    CHECKS, DEFAULT_GENERATORS, DomainError, apply_word, parse_generator, parse_word,
    shortest_path, verify_theory,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2
VERIFY_IDS = list(CHECKS) + ["cadences_tetradic", "cadences_triadic", "ii_v_not_minimal"]


class UsageError(Exception):
    pass


def _styled(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _key(text: str) -> Tonality:
    try:
        return Tonality(spelling_pc(text.strip()))
    except (KeyError, IndexError):
        raise UsageError(f"bad key {text!r}") from None


def _chord(text: str):
    try:
        return realize_chord(parse_chord(text))[0]
    except ChordSymbolError as exc:
        raise UsageError(str(exc)) from None


def cmd_transform(args) -> int:
    c = _chord(args.chord)
    try:
        w = parse_word(args.word)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(chord_name(apply_word(w, c)))
    return EXIT_OK


def cmd_cadences(args) -> int:
    key = _key(args.key)
    sets = minimal_cadential_sets(key, Arity(args.arity))
    sets.sort(key=lambda s: (int(s.name[1:]) if s.name else 99, s.sorted_degrees))
    for s in sets:
        region = f"  region {region_of(s).value}" if s.arity is Arity.TETRADIC else ""
        print(f"{s}{region}")
    return EXIT_OK


def cmd_pivots(args) -> int:
    k1, k2 = _key(args.from_key), _key(args.to_key)
    sharp = lambda k: k.root in SHARP_KEYS  # noqa: E731
    table = load_pivot_table(args.table) if args.table else DEFAULT_PIVOT_TABLE
    common = common_degree_chords(k1, k2, Arity(args.arity))
    print(f"common degree chords {spell(k1.root, sharp(k1))} -> {spell(k2.root, sharp(k2))}:")
    for c, d1, d2 in common:
        print(f"  {chord_name(c, sharp(k2))}: {d1} / {d2}")
    if not common:
        print("  none")
    interval = pc(k2.root - k1.root)
    entry = table.get(interval)
    if entry is None:
        print(f"interval +{interval}: no table entry -> NonQuantized(no-table-entry)")
    else:
        req = ",".join(str(d) for d in sorted(entry.required_degrees))
        print(f"interval +{interval}: Quantized iff target degrees {{{req}}} are presented")
    return EXIT_OK


def cmd_path(args) -> int:
    a, b = _chord(args.from_chord), _chord(args.to_chord)
    try:
        gens = [parse_generator(g) for g in args.gens.split(",")] if args.gens else DEFAULT_GENERATORS
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    w = shortest_path(a, b, gens)
    if w is None:
        print("NoPath")
        return EXIT_DOMAIN
    print(f"{w}  (length {len(w)})")
    return EXIT_OK


def cmd_analyze(args) -> int:
    cfg = AnalysisConfig(
        mode=MatchMode(args.mode), window=args.window, cover_span=args.cover_span,
        passage_radius=args.radius,
        pivot_table=dict(load_pivot_table(args.table)) if args.table else dict(DEFAULT_PIVOT_TABLE),
    )
    for path in args.files:
        report = analyze(load_leadsheet(path), cfg)
        if args.format == "structured":
            sys.stdout.write(json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n")
        else:
            sys.stdout.write(report_to_text(report))
        if args.figures:
            from .plots import plot_report

            for p in plot_report(report, args.figures, Path(path).stem):
                print(f"wrote {p}", file=sys.stderr)
    return EXIT_OK


def run_checks(which: str) -> list:
    ids = VERIFY_IDS if which == "all" else [which]
    reports = []
    for cid in ids:
        if cid == "cadences_tetradic":
            reports.append(verify_enumeration(Arity.TETRADIC))
        elif cid == "cadences_triadic":
            reports.append(verify_enumeration(Arity.TRIADIC))
        elif cid == "ii_v_not_minimal":
            reports.append(verify_not_minimal())
        else:
            reports.append(verify_theory(cid))
    return reports


def cmd_verify(args) -> int:
    if args.check != "all" and args.check not in VERIFY_IDS:
        raise UsageError(f"unknown check {args.check!r}; choose from {', '.join(VERIFY_IDS)} or all")
    ok = True
    for rep in run_checks(args.check):
        status = _styled("PASS", "32") if rep.passed else _styled("FAIL", "31")
        print(f"{status} {rep.check_id}: {rep.cases_checked} cases, {len(rep.failures)} failures")
        for src, exp, got in rep.failures[:5]:
            print(f"    {src}: expected {exp}, got {got}")
        ok &= rep.passed
    return EXIT_OK if ok else EXIT_DOMAIN


def cmd_export_dot(args) -> int:
    key = _key(args.key)
    if args.what == "conglomerate":
        sys.stdout.write(dot.conglomerate_dot(key))
    elif args.what == "prism":
        sys.stdout.write(dot.prism_dot(key))
    else:
        try:
            gens = [parse_generator(g) for g in args.gens.split(",")] if args.gens else DEFAULT_GENERATORS
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        sys.stdout.write(dot.cayley_dot(gens))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cadential", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("transform", help="apply a generator word to a chord")
    s.add_argument("--chord", required=True)
    s.add_argument("--word", required=True, help="comma-separated, e.g. L42,T8")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("cadences", help="minimal cadential sets of a major key")
    s.add_argument("--key", required=True)
    s.add_argument("--arity", type=int, choices=(3, 4), default=4)
    s.set_defaults(func=cmd_cadences)

    s = sub.add_parser("pivots", help="common degree chords and the pivot-table verdict")
    s.add_argument("--from", dest="from_key", required=True)
    s.add_argument("--to", dest="to_key", required=True)
    s.add_argument("--arity", type=int, choices=(3, 4), default=4)
    s.add_argument("--table", help="pivot table file")
    s.set_defaults(func=cmd_pivots)

    s = sub.add_parser("path", help="shortest generator word between chords")
    s.add_argument("--from", dest="from_chord", required=True)
    s.add_argument("--to", dest="to_chord", required=True)
    s.add_argument("--gens", help="comma-separated generators (default R42,L13,L42,P42)")
    s.set_defaults(func=cmd_path)

    s = sub.add_parser("analyze", help="analyze lead sheets")
    s.add_argument("files", nargs="+")
    s.add_argument("--mode", choices=[m.value for m in MatchMode], default="degree_root")
    s.add_argument("--window", type=int, default=4)
    s.add_argument("--radius", type=int, default=2)
    s.add_argument("--cover-span", type=int, default=2)
    s.add_argument("--table", help="pivot table file")
    s.add_argument("--format", choices=("text", "structured"), default="text")
    s.add_argument("--figures", metavar="DIR", help="also write PNG figures here")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("verify", help="machine-check the theory")
    s.add_argument("--check", default="all")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("export-dot", help="DOT graph on stdout")
    s.add_argument("--what", choices=("conglomerate", "prism", "cayley"), required=True)
    s.add_argument("--key", default="C")
    s.add_argument("--gens")
    s.set_defaults(func=cmd_export_dot)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ContradictoryAlterations, PivotTableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ParseError, EmptySheet, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
