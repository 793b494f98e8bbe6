"""End-to-end realization and the gold-corpus checker."""
from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, TextIO, Union

from .errors import ParseError, StageError, StatekitError
from .features import Template
from .lexicon import LanguageBundle
from .marking import PHASES, MarkingRequest, ResolvedMarking, resolve_marking
from .morphophon import MorphSequence, Piece, spell_out

CORPUS_COLUMNS = ("lang", "lexeme", "pushed", "context", "expected", "note", "source")
FLAGGED_NOTES = ("uncertain-transcription", "paper-inconsistency")


@dataclass(frozen=True)
class DerivationTrace:
    events: tuple  # (phase, text) pairs, phases in PHASES order
    template: Template
    underlying: str
    fired: tuple
    surface: str

    def lines(self) -> list[str]:
        return [f"{phase}: {text}" for phase, text in self.events]

    def phases(self) -> list[str]:
        return [phase for phase, _ in self.events]

    def __str__(self):
        return "\n".join(self.lines())


def assemble(b: LanguageBundle, rm: ResolvedMarking) -> MorphSequence:
    """Linearize markers around the radical.

    Earlier-declared paradigms sit further out on the left and closer in on
    the right; clitics go outside every affix."""
    rank = {p.id: i for i, p in enumerate(b.paradigms)}
    choices = sorted(rm.markers, key=lambda c: rank[c.paradigm])
    procl, pre, suf, encl = [], [], [], []
    for c in choices:
        m, origin = c.marker, f"marker:{c.paradigm}"
        if m.position == "circumfix":
            pre.append(Piece(m.pre, origin, "prefix"))
            suf.append(Piece(m.post, origin, "suffix"))
        elif m.position == "suffix":
            suf.append(Piece(m.form, origin, "suffix"))
        elif m.position == "proclitic":
            procl.append(Piece(m.form, origin, "proclitic"))
        elif m.position == "enclitic":
            encl.append(Piece(m.form, origin, "enclitic"))
        else:
            pre.append(Piece(m.form, origin, "prefix"))
    radical = Piece(rm.lexeme.radical, "radical", "radical")
    return MorphSequence(procl + pre + [radical] + suf + encl, rm.template, rm.state)


def realize(b: LanguageBundle, lexeme: str, pushed="", context: str = "",
            state_override: Optional[str] = None) -> tuple[str, DerivationTrace]:
    """Resolve, linearize and spell out one word-form."""
    try:
        req = MarkingRequest(lexeme, pushed, context)
        rm = resolve_marking(b, req, state_override=state_override)
    except StatekitError as exc:
        raise StageError("marking", exc) from exc
    try:
        seq = assemble(b, rm)
    except (StatekitError, ValueError) as exc:
        raise StageError("assembly", exc) from exc
    try:
        out = spell_out(b, seq)
    except StatekitError as exc:
        raise StageError("spell-out", exc) from exc
    events = [(e.phase, e.text if e.stage in (e.phase, "marker") else f"{e.stage}: {e.text}") for e in rm.events]
    events.append(("phon", f"underlying {out.underlying}"))
    for rule_id, before, after in out.steps:
        events.append(("phon", f"{rule_id}: {before} -> {after}"))
    events.append(("surface", out.surface))
    events.sort(key=lambda ev: PHASES.index(ev[0]))  # stable: keeps order inside a phase
    trace = DerivationTrace(tuple(events), rm.template, out.underlying, out.fired, out.surface)
    return out.surface, trace


# -- gold corpus -----------------------------------------------------------------

@dataclass(frozen=True)
class GoldRow:
    row: int
    lang: str
    lexeme: str
    pushed: str
    context: str
    expected: str
    note: str = ""
    source: str = ""

    @property
    def flagged(self) -> bool:
        return self.note in FLAGGED_NOTES


def read_corpus(source: Union[str, TextIO, Iterable[str]]) -> list[GoldRow]:
    """Parse a tab-separated corpus; the first non-comment line is the header."""
    if isinstance(source, str):
        source = source.splitlines()
    rows: list[GoldRow] = []
    header = None
    reader = csv.reader(source, delimiter="\t", quoting=csv.QUOTE_NONE)
    for lineno, cells in enumerate(reader, start=1):
        if not cells or not "".join(cells).strip() or cells[0].startswith("#"):
            continue
        cells = [c.strip() for c in cells]
        if header is None:
            if tuple(cells) != CORPUS_COLUMNS:
                raise ParseError(lineno, f"corpus header must be {' '.join(CORPUS_COLUMNS)}")
            header = cells
            continue
        if len(cells) != len(CORPUS_COLUMNS):
            raise ParseError(lineno, f"expected {len(CORPUS_COLUMNS)} columns, got {len(cells)}")
        row = GoldRow(lineno, *cells)
        if not row.lang or not row.lexeme or not row.context:
            raise ParseError(lineno, "lang, lexeme and context are required")
        if not row.expected and row.note != "uncertain-transcription":
            raise ParseError(lineno, "empty expected surface")
        rows.append(row)
    return rows


@dataclass(frozen=True)
class RowResult:
    row: GoldRow
    status: str  # pass, fail or error
    got: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "pass"


@dataclass
class CorpusReport:
    results: list = field(default_factory=list)

    @property
    def hard(self) -> list[RowResult]:
        return [r for r in self.results if not r.row.flagged]

    @property
    def flagged(self) -> list[RowResult]:
        return [r for r in self.results if r.row.flagged]

    @property
    def failures(self) -> list[RowResult]:
        return [r for r in self.hard if not r.ok]

    @property
    def passed(self) -> bool:
        return not self.failures

    def totals_by_source(self) -> dict[str, tuple[int, int]]:
        seen, good = Counter(), Counter()
        for r in self.hard:
            seen[r.row.source] += 1
            good[r.row.source] += r.ok
        return {src: (good[src], seen[src]) for src in seen}

    def format_tsv(self) -> str:
        lines = ["row\tlang\tlexeme\tpushed\tcontext\texpected\tgot\tstatus\tnote\tsource"]
        for r in self.results:
            g = r.row
            status = r.status if not g.flagged else f"flagged-{r.status}"
            lines.append("\t".join([str(g.row), g.lang, g.lexeme, g.pushed, g.context,
                                    g.expected, r.got, status, g.note, g.source]))
        return "\n".join(lines) + "\n"

    def format_human(self) -> str:
        out = []
        for r in self.failures:
            g = r.row
            out.append(f"FAIL row {g.row} [{g.lang}] {g.lexeme} {g.pushed or '-'} {g.context}: "
                       f"expected {g.expected!r}, got {r.got!r}{' (' + r.detail + ')' if r.detail else ''}")
        width = max([len(s) for s in self.totals_by_source()] + [6])
        out.append(f"{'source':<{width}}  pass/total")
        for src, (good, seen) in sorted(self.totals_by_source().items()):
            out.append(f"{src:<{width}}  {good}/{seen}")
        if self.flagged:
            out.append("flagged rows (never fail the run):")
            for r in self.flagged:
                g = r.row
                out.append(f"  row {g.row} [{g.lang}] {g.lexeme} {g.context}: expected {g.expected!r}, "
                           f"got {r.got!r} -> {r.status} ({g.note})")
        n_ok = sum(r.ok for r in self.hard)
        out.append(f"{n_ok}/{len(self.hard)} rows pass, {len(self.failures)} hard failures, "
                   f"{len(self.flagged)} flagged")
        return "\n".join(out) + "\n"


def check_row(bundles: Mapping[str, LanguageBundle], row: GoldRow) -> RowResult:
    b = bundles.get(row.lang)
    if b is None:
        return RowResult(row, "error", "", f"no bundle for language {row.lang!r}")
    try:
        surface, _ = realize(b, row.lexeme, row.pushed, row.context)
    except StatekitError as exc:
        return RowResult(row, "error", "", str(exc))
    return RowResult(row, "pass" if surface == row.expected else "fail", surface)


def check_corpus(bundles, corpus) -> CorpusReport:
    """Realize every row and compare byte-for-byte, keeping input order."""
    if isinstance(bundles, LanguageBundle):
        bundles = {bundles.language: bundles}
    elif not isinstance(bundles, Mapping):
        bundles = {b.language: b for b in bundles}
    rows = corpus if isinstance(corpus, list) and all(isinstance(r, GoldRow) for r in corpus) \
        else read_corpus(corpus)
    return CorpusReport([check_row(bundles, r) for r in rows])
