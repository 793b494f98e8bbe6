"""Command-line front end: ``statekit generate|state|check|select|inspect``."""
from __future__ import annotations

import argparse
import os
import sys

from ._validation import resolve_bundle
from .errors import StatekitError
from .features import make_template
from .lexicon import gold_corpus_path, load_seeds, validate_bundle
from .marking import markedness_report
from .pipeline import check_corpus, read_corpus, realize
from .selection import read_candidates, select_exhaustive, select_heuristic
from .state import apply_state, covering_rule


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _bundles(spec):
    if spec == "all":
        return load_seeds()
    b = resolve_bundle(spec)
    return {b.language: b}


def _one_bundle(spec):
    if spec == "all":
        raise StatekitError("this subcommand needs a single bundle, not 'all'")
    return resolve_bundle(spec)


def cmd_generate(args, out):
    b = _one_bundle(args.bundle)
    surface, trace = realize(b, args.lexeme, args.pushed, args.context, args.state_override)
    if args.trace:
        out.write(str(trace) + "\n")
    else:
        out.write(surface + "\n")
    return 0


def cmd_state(args, out):
    b = _one_bundle(args.bundle)
    cs = b.cogset(args.cogset)
    t = make_template(cs.category, args.template) if args.template is not None else cs.unmarked
    rule = covering_rule(b, args.context, cs)
    result = apply_state(b, args.context, cs, t)
    order = [m for p in b.paradigms for m in p.members]
    label = f"AS ({rule.id})" if rule else "FS"
    out.write(f"{args.context}\t{cs.id}\t{label}\t{t.format(order)} -> {result.format(order)}\n")
    return 0


def cmd_check(args, out):
    bundles = _bundles(args.bundle)
    path = args.corpus
    if path is None or (not os.path.isfile(path) and os.path.basename(path) == "gold.tsv"):
        text = gold_corpus_path().read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    rows = [r for r in read_corpus(text) if args.bundle == "all" or r.lang in bundles]
    report = check_corpus(bundles, rows)
    out.write(report.format_tsv() if args.format == "tsv" else report.format_human())
    return 0 if report.passed else 1


def cmd_select(args, out):
    with open(args.candidates, encoding="utf-8") as fh:
        layers = read_candidates(fh)
    if args.mode == "exact":
        res = select_exhaustive(args.query, layers)
    else:
        budget = args.budget if args.budget is not None else sum(len(l.candidates) for l in layers)
        res = select_heuristic(args.query, layers, budget, args.seed)
    out.write(f"{res.item}\tcost={res.cost}\tlayer={res.layer}\texact={str(res.exact).lower()}\n")
    return 0


def cmd_inspect(args, out):
    b = _one_bundle(args.bundle)
    if args.lexeme:
        for entry in markedness_report(b, args.lexeme):
            out.write(entry.describe() + "\n")
        return 0
    out.write(f"{b.language}\t{b.name}\n")
    for label, items in (("paradigms", b.paradigms), ("markers", b.markers), ("cogsets", b.cogsets),
                         ("lexemes", b.lexemes), ("contexts", b.contexts),
                         ("state rules", b.state_rules), ("phon rules", b.phon_rules)):
        out.write(f"{label}\t{len(items)}\n")
    diags = validate_bundle(b)
    for d in diags:
        out.write(f"diagnostic\t{d}\n")
    return 1 if diags else 0


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="statekit", description="State-driven noun marking: generate, check and inspect.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="realize one word-form")
    p.add_argument("--bundle", required=True, help="bundle file or seed name (rif, fr, en, ...)")
    p.add_argument("--lexeme", required=True)
    p.add_argument("--pushed", default="", help="intended features, e.g. +PL,+F")
    p.add_argument("--context", required=True)
    p.add_argument("--state-override", choices=("FS", "AS"), default=None)
    p.add_argument("--trace", action="store_true", help="print the derivation trace")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("state", help="apply the state function to a template")
    p.add_argument("--bundle", required=True)
    p.add_argument("--context", required=True)
    p.add_argument("--cogset", required=True)
    p.add_argument("--template", default=None, help="signed features; default: the unmarked template")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("check", help="run a gold corpus")
    p.add_argument("--bundle", default="all")
    p.add_argument("--corpus", default=None, help="corpus TSV (default: the packaged gold corpus)")
    p.add_argument("--format", choices=("human", "tsv"), default="human")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("select", help="pick the item nearest to a query")
    parser.select_parser = p
    p.add_argument("--query", required=True, help="comma separated features")
    p.add_argument("--candidates", required=True, help="layer<TAB>id<TAB>features lines")
    p.add_argument("--mode", choices=("exact", "heuristic"), default="exact")
    p.add_argument("--budget", type=_positive, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("inspect", help="bundle summary or a lexeme's markedness table")
    p.add_argument("--bundle", required=True)
    p.add_argument("--lexeme", default=None)
    p.set_defaults(func=cmd_inspect)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "select" and args.mode == "heuristic" and args.seed is None:
        parser.select_parser.print_help(err)
        err.write("statekit select: error: --mode heuristic requires an explicit --seed\n")
        return 2
    try:
        return args.func(args, out)
    except (StatekitError, OSError, ValueError) as exc:
        err.write(f"statekit {args.command}: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
