"""Sign matrices, markers, language bundles and the bundle file format.

A bundle file is UTF-8 and line oriented::

    bundle	language=rif	name=Riffian
    [FEATURES]
    name=SG	gloss=singular
    [PARADIGMS]
    id=countability	members=COL,SING	kind=inner-intrinsic	unmarked=SING
    ...

Records are tab separated ``key=value`` pairs, lists use ``,``, signed
features are written ``+NAME``/``-NAME``, ``0`` is the empty form and a
circumfix is written ``pre..post``. Lines starting with ``#`` are comments.
Loading cross-validates everything and rejects, never repairs.
"""
from __future__ import annotations

import io
import unicodedata
from dataclasses import dataclass, replace
from functools import cached_property
from importlib import resources
from typing import Iterable, TextIO, Union

from .errors import (AmbiguousMarker, DanglingReference, DuplicateId, InvalidBundle, NoMarker,
                     NotFound, ParseError, StatekitError, UnknownCognitiveSet, UnknownParadigm)
from .features import CognitiveSet, Paradigm, SignedFeature, Template, parse_features
from .morphophon import PhonRule
from .state import StateRule, SyntacticContext

SECTIONS = ("FEATURES", "PARADIGMS", "MARKERS", "COGSETS", "LEXEMES",
            "CONTEXTS", "STATERULES", "PHONRULES")
POSITIONS = ("prefix", "suffix", "circumfix", "proclitic", "enclitic")
EMPTY = "0"


@dataclass(frozen=True)
class FeatureDecl:
    name: str
    gloss: str = ""


@dataclass(frozen=True)
class Marker:
    id: str
    paradigm: str
    realizes: frozenset
    form: str = ""
    position: str = "prefix"

    def __post_init__(self):
        object.__setattr__(self, "realizes", frozenset(self.realizes))
        if self.position not in POSITIONS:
            raise ValueError(f"marker {self.id!r}: unknown position {self.position!r}")
        if self.position == "circumfix" and ".." not in self.form:
            raise ValueError(f"circumfix marker {self.id!r} must be written pre..post")
        names = [f.name for f in self.realizes]
        if len(names) != len(set(names)):
            raise ValueError(f"marker {self.id!r} realizes an inconsistent feature set")

    @property
    def formed(self) -> bool:
        return bool(self.form.replace("..", ""))

    @property
    def pre(self) -> str:
        return self.form.split("..", 1)[0] if self.position == "circumfix" else self.form

    @property
    def post(self) -> str:
        return self.form.split("..", 1)[1] if self.position == "circumfix" else ""

    def __str__(self):
        return self.form or "∅"


@dataclass(frozen=True)
class SignMatrix:
    id: str
    radical: str
    cogset: str
    gloss: str = ""
    semantic: frozenset = frozenset()
    conserve: tuple = ()
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "semantic", frozenset(self.semantic))
        object.__setattr__(self, "conserve", tuple(tuple(p) for p in self.conserve))
        if not self.radical:
            raise ValueError(f"lexeme {self.id!r} has an empty radical")


@dataclass(frozen=True)
class Diagnostic:
    code: str
    section: str
    id: str
    message: str

    def __str__(self):
        return f"{self.code} [{self.section}] {self.id}: {self.message}"


@dataclass(frozen=True)
class LanguageBundle:
    language: str
    name: str = ""
    features: tuple = ()
    paradigms: tuple = ()
    markers: tuple = ()
    cogsets: tuple = ()
    lexemes: tuple = ()
    contexts: tuple = ()
    state_rules: tuple = ()
    phon_rules: tuple = ()

    def __post_init__(self):
        for name in ("features", "paradigms", "markers", "cogsets", "lexemes",
                     "contexts", "state_rules", "phon_rules"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @cached_property
    def paradigm_index(self) -> dict:
        return {p.id: p for p in self.paradigms}

    @cached_property
    def cogset_index(self) -> dict:
        return {c.id: c for c in self.cogsets}

    @cached_property
    def lexeme_index(self) -> dict:
        return {lx.id: lx for lx in self.lexemes}

    @cached_property
    def context_index(self) -> dict:
        return {c.id: c for c in self.contexts}

    @cached_property
    def feature_paradigm(self) -> dict:
        """Feature name -> paradigm owning it."""
        return {m: p for p in self.paradigms for m in p.members}

    def paradigm(self, pid: str) -> Paradigm:
        try:
            return self.paradigm_index[pid]
        except KeyError:
            raise UnknownParadigm(pid) from None

    def cogset(self, sid: str) -> CognitiveSet:
        try:
            return self.cogset_index[sid]
        except KeyError:
            raise UnknownCognitiveSet(sid) from None

    def markers_of(self, pid: str) -> list[Marker]:
        return [m for m in self.markers if m.paradigm == pid]

    def with_lexemes(self, *lexemes: SignMatrix) -> "LanguageBundle":
        """A new bundle extended with ``lexemes`` (ids must stay unique)."""
        extended = replace(self, lexemes=self.lexemes + tuple(lexemes))
        _check_references(extended)
        return extended


# -- lookups ---------------------------------------------------------------

def lookup_lexeme(b: LanguageBundle, ident: str) -> SignMatrix:
    try:
        return b.lexeme_index[ident]
    except KeyError:
        raise NotFound(ident) from None


def marker_for(b: LanguageBundle, paradigm: Union[str, Paradigm], t: Template) -> Marker:
    """The unique marker of ``paradigm`` whose realized features all hold in ``t``."""
    pid = paradigm.id if isinstance(paradigm, Paradigm) else paradigm
    b.paradigm(pid)
    hits = [m for m in b.markers_of(pid) if t.satisfies(m.realizes)]
    if not hits:
        raise NoMarker(pid, t)
    if len(hits) > 1:
        raise AmbiguousMarker(pid, hits)
    return hits[0]


# -- validation ------------------------------------------------------------

def _compatible(b: LanguageBundle, features: Iterable[SignedFeature]) -> bool:
    """Could a single well-formed template carry all of ``features``?"""
    polarity: dict[str, bool] = {}
    for f in features:
        if polarity.setdefault(f.name, f.positive) != f.positive:
            return False
    positives: dict[str, int] = {}
    for name, pos in polarity.items():
        p = b.feature_paradigm.get(name)
        if pos and p is not None and p.exclusive:
            positives[p.id] = positives.get(p.id, 0) + 1
    return all(n <= 1 for n in positives.values())


def _duplicates(items, section, key=lambda x: x.id):
    seen = set()
    for item in items:
        k = key(item)
        if k in seen:
            yield DuplicateId(section, k)
        seen.add(k)


def _references(b: LanguageBundle):
    """Yield DanglingReference/DuplicateId errors (structural problems)."""
    yield from _duplicates(b.features, "FEATURES", key=lambda f: f.name)
    yield from _duplicates(b.paradigms, "PARADIGMS")
    yield from _duplicates(b.markers, "MARKERS")
    yield from _duplicates(b.cogsets, "COGSETS")
    yield from _duplicates(b.lexemes, "LEXEMES")
    yield from _duplicates(b.contexts, "CONTEXTS")
    yield from _duplicates(b.state_rules, "STATERULES")
    yield from _duplicates(b.phon_rules, "PHONRULES")
    feats = {f.name for f in b.features}

    def check_feats(section, names):
        for n in names:
            if n not in feats:
                yield DanglingReference(section, n)

    for p in b.paradigms:
        yield from check_feats("PARADIGMS", p.members)
    for m in b.markers:
        if m.paradigm not in b.paradigm_index:
            yield DanglingReference("MARKERS", m.paradigm)
        yield from check_feats("MARKERS", (f.name for f in m.realizes))
    for cs in b.cogsets:
        for pid in set(cs.paradigms) | set(cs.priority) | set(cs.frozen):
            if pid not in b.paradigm_index:
                yield DanglingReference("COGSETS", pid)
        yield from check_feats("COGSETS", cs.unmarked.names)
    for lx in b.lexemes:
        if lx.cogset not in b.cogset_index:
            yield DanglingReference("LEXEMES", lx.cogset)
        for pid, fname in lx.conserve:
            if pid not in b.paradigm_index:
                yield DanglingReference("LEXEMES", pid)
            yield from check_feats("LEXEMES", [fname])
    for r in b.state_rules:
        for cid in r.contexts:
            if cid not in b.context_index:
                yield DanglingReference("STATERULES", cid)
        for sid in r.cogsets:
            if sid not in b.cogset_index:
                yield DanglingReference("STATERULES", sid)
        yield from check_feats("STATERULES", (f.name for f in r.assignments))
    for r in b.phon_rules:
        yield from check_feats("PHONRULES", (f.name for f in r.cond))


def _check_references(b: LanguageBundle) -> None:
    for err in _references(b):
        raise err


def validate_bundle(b: LanguageBundle) -> list[Diagnostic]:
    """Every violated bundle invariant, as diagnostics (empty when valid)."""
    diags = [Diagnostic(type(e).__name__, e.section, e.ident, str(e)) for e in _references(b)]
    if diags:
        return diags

    by_paradigm: dict[str, list[Marker]] = {}
    for m in b.markers:
        by_paradigm.setdefault(m.paradigm, []).append(m)
        stray = {f.name for f in m.realizes} - set(b.feature_paradigm)
        if stray:
            diags.append(Diagnostic("UnownedFeature", "MARKERS", m.id,
                                    f"features {sorted(stray)} belong to no paradigm"))
        if not _compatible(b, m.realizes):
            diags.append(Diagnostic("InconsistentMarker", "MARKERS", m.id,
                                    "realized features cannot co-occur"))
    for pid, ms in by_paradigm.items():
        for i, m1 in enumerate(ms):
            for m2 in ms[i + 1:]:
                if _compatible(b, m1.realizes | m2.realizes):
                    diags.append(Diagnostic("AmbiguousMarker", "MARKERS", m2.id,
                                            f"overlaps {m1.id} in paradigm {pid}"))

    for cs in b.cogsets:
        if cs.language != b.language:
            diags.append(Diagnostic("LanguageMismatch", "COGSETS", cs.id, cs.language))
        for pid in cs.paradigms:
            p = b.paradigm_index[pid]
            if not p.intrinsic:
                diags.append(Diagnostic("NotIntrinsic", "COGSETS", cs.id,
                                        f"{pid} is extrinsic"))
            missing = [m for m in p.members if cs.unmarked.value(m) is None]
            if missing:
                diags.append(Diagnostic("IncompleteUnmarked", "COGSETS", cs.id,
                                        f"unmarked template leaves {missing} of {pid} undetermined"))
        for pid in set(cs.priority) | set(cs.frozen):
            if pid not in cs.paradigms:
                diags.append(Diagnostic("NotIntrinsic", "COGSETS", cs.id,
                                        f"{pid} listed in priority/frozen but not intrinsic"))
        if not _compatible(b, cs.unmarked.assignments):
            diags.append(Diagnostic("InconsistentUnmarked", "COGSETS", cs.id,
                                    "two members of one paradigm are both positive"))

    for lx in b.lexemes:
        cs = b.cogset_index[lx.cogset]
        for pid, fname in lx.conserve:
            if pid not in cs.paradigms:
                diags.append(Diagnostic("ConservedPullScope", "LEXEMES", lx.id,
                                        f"{pid} is not intrinsic to {cs.id}"))
            elif fname not in b.paradigm_index[pid].members:
                diags.append(Diagnostic("ConservedPullScope", "LEXEMES", lx.id,
                                        f"{fname} is not a member of {pid}"))

    seen_pairs: dict[tuple, str] = {}
    for r in b.state_rules:
        if r.language != b.language:
            diags.append(Diagnostic("LanguageMismatch", "STATERULES", r.id, r.language))
        for sid in sorted(r.cogsets):
            cs = b.cogset_index[sid]
            governed = {m for pid in cs.state for m in b.paradigm_index[pid].members}
            outside = sorted(f.name for f in r.assignments if f.name not in governed)
            if outside:
                diags.append(Diagnostic("StateScope", "STATERULES", r.id,
                                        f"assigns {outside} outside the state-governed paradigms of {sid}"))
            for cid in sorted(r.contexts):
                other = seen_pairs.setdefault((cid, sid), r.id)
                if other != r.id:
                    diags.append(Diagnostic("OverlappingStateRules", "STATERULES", r.id,
                                            f"({cid}, {sid}) already covered by {other}"))
        if not _compatible(b, r.assignments):
            diags.append(Diagnostic("InconsistentAssignment", "STATERULES", r.id,
                                    "assignments cannot co-occur"))
    return diags


# -- parsing ---------------------------------------------------------------

_SCHEMA = {
    "FEATURES": ({"name"}, {"gloss"}),
    "PARADIGMS": ({"id", "members", "kind"}, {"unmarked", "slot"}),
    "MARKERS": ({"paradigm", "realizes", "form"}, {"id", "position"}),
    "COGSETS": ({"id", "category", "paradigms", "unmarked"}, {"state", "priority", "frozen"}),
    "LEXEMES": ({"id", "radical", "cogset"}, {"gloss", "sem", "conserve", "note"}),
    "CONTEXTS": ({"id"}, {"gloss"}),
    "STATERULES": ({"contexts", "cogsets", "assign"}, {"id"}),
    "PHONRULES": ({"id", "kind", "match"}, {"replace", "left", "right", "cond", "state"}),
}


def canonical(features) -> tuple:
    return tuple(sorted(features, key=lambda f: (f.name, not f.positive)))


def _split_list(value: str) -> list[str]:
    return [v for v in (x.strip() for x in value.split(",")) if v]


def _form(value: str) -> str:
    return "" if value == EMPTY else value


def _record(line: str, lineno: int, section: str) -> dict:
    rec = {}
    for cell in line.split("\t"):
        if not cell.strip():
            continue
        if "=" not in cell:
            raise ParseError(lineno, f"expected key=value, got {cell!r}")
        key, value = cell.split("=", 1)
        key = key.strip()
        if key in rec:
            raise ParseError(lineno, f"key {key!r} given twice")
        rec[key] = value.strip()
    required, optional = _SCHEMA[section]
    missing = required - rec.keys()
    if missing:
        raise ParseError(lineno, f"[{section}] record lacks {sorted(missing)}")
    unknown = rec.keys() - required - optional
    if unknown:
        raise ParseError(lineno, f"[{section}] unknown keys {sorted(unknown)}")
    return rec


def _build(section: str, rec: dict, language: str, index: int):
    if section == "FEATURES":
        return FeatureDecl(rec["name"], rec.get("gloss", ""))
    if section == "PARADIGMS":
        return Paradigm(rec["id"], tuple(_split_list(rec["members"])), rec["kind"],
                        rec.get("unmarked") or None, rec.get("slot") or None)
    if section == "MARKERS":
        form = _form(rec["form"])
        return Marker(rec.get("id") or f"{rec['paradigm']}:{form or '∅'}:{index}",
                      rec["paradigm"], frozenset(parse_features(rec["realizes"])),
                      form, rec.get("position", "prefix"))
    if section == "COGSETS":
        unmarked = Template(rec["category"], frozenset(parse_features(rec["unmarked"])))
        return CognitiveSet(rec["id"], language, rec["category"], _split_list(rec["paradigms"]),
                            unmarked, _split_list(rec.get("state", "")),
                            _split_list(rec.get("priority", "")), _split_list(rec.get("frozen", "")))
    if section == "LEXEMES":
        conserve = []
        for item in _split_list(rec.get("conserve", "")):
            if ":" not in item:
                raise ValueError(f"conserve entries are paradigm:FEATURE, got {item!r}")
            conserve.append(tuple(item.split(":", 1)))
        return SignMatrix(rec["id"], rec["radical"], rec["cogset"], rec.get("gloss", ""),
                          frozenset(_split_list(rec.get("sem", ""))), conserve, rec.get("note", ""))
    if section == "CONTEXTS":
        return SyntacticContext(rec["id"], language, rec.get("gloss", ""))
    if section == "STATERULES":
        assignments = canonical(parse_features(rec["assign"]))
        Template("_", frozenset(assignments))  # consistency
        return StateRule(rec.get("id") or f"rule{index + 1}", language,
                         frozenset(_split_list(rec["contexts"])),
                         frozenset(_split_list(rec["cogsets"])), assignments)
    if section == "PHONRULES":
        repl = rec.get("replace")
        return PhonRule(rec["id"], rec["kind"], rec["match"],
                        None if repl is None else _form(repl),
                        rec.get("left", ""), rec.get("right", ""),
                        canonical(parse_features(rec.get("cond", ""))), rec.get("state") or None)
    raise AssertionError(section)


_FIELD = {"FEATURES": "features", "PARADIGMS": "paradigms", "MARKERS": "markers",
          "COGSETS": "cogsets", "LEXEMES": "lexemes", "CONTEXTS": "contexts",
          "STATERULES": "state_rules", "PHONRULES": "phon_rules"}


def parse_bundle(source: Union[str, TextIO]) -> LanguageBundle:
    """Parse bundle text and check structure (duplicates, dangling ids)."""
    text = source if isinstance(source, str) else source.read()
    text = unicodedata.normalize("NFC", text.lstrip("﻿"))
    header = None
    section = None
    items = {name: [] for name in SECTIONS}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if header is None:
            cells = [c for c in line.split("\t") if c.strip()]
            if not cells or cells[0].strip() != "bundle":
                raise ParseError(lineno, "missing header")
            meta = {}
            for cell in cells[1:]:
                if "=" not in cell:
                    raise ParseError(lineno, f"expected key=value, got {cell!r}")
                k, v = cell.split("=", 1)
                meta[k.strip()] = v.strip()
            if not meta.get("language"):
                raise ParseError(lineno, "header lacks language=")
            header = meta
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            name = stripped[1:-1]
            if name not in SECTIONS:
                raise ParseError(lineno, f"unknown section [{name}]")
            section = name
            continue
        if section is None:
            raise ParseError(lineno, "record outside of any section")
        rec = _record(line, lineno, section)
        try:
            items[section].append(_build(section, rec, header["language"], len(items[section])))
        except (ValueError, StatekitError) as exc:
            raise ParseError(lineno, str(exc)) from None
    if header is None:
        raise ParseError(1, "missing header")
    bundle = LanguageBundle(header["language"], header.get("name", ""),
                            **{_FIELD[s]: items[s] for s in SECTIONS})
    _check_references(bundle)
    return bundle


def load_bundle(source: Union[str, TextIO], validate: bool = True) -> LanguageBundle:
    """Parse and fully validate a bundle; raises InvalidBundle on diagnostics."""
    bundle = parse_bundle(source)
    if validate:
        diags = validate_bundle(bundle)
        if diags:
            raise InvalidBundle(diags)
    return bundle


def read_bundle(path, validate: bool = True) -> LanguageBundle:
    with open(path, encoding="utf-8") as fh:
        return load_bundle(fh, validate=validate)


# -- serialization -----------------------------------------------------------

def _feats(fs) -> str:
    return ",".join(str(f) for f in canonical(fs))


def _line(**kv) -> str:
    return "\t".join(f"{k}={v}" for k, v in kv.items() if v not in (None, ""))


def serialize_bundle(b: LanguageBundle) -> str:
    out = io.StringIO()
    header = f"bundle\tlanguage={b.language}" + (f"\tname={b.name}" if b.name else "")
    out.write(header + "\n")
    out.write("[FEATURES]\n")
    for f in b.features:
        out.write(_line(name=f.name, gloss=f.gloss) + "\n")
    out.write("[PARADIGMS]\n")
    for p in b.paradigms:
        out.write(_line(id=p.id, members=",".join(p.members), kind=p.kind,
                        unmarked=p.unmarked, slot=p.slot) + "\n")
    out.write("[MARKERS]\n")
    for m in b.markers:
        out.write(_line(id=m.id, paradigm=m.paradigm, realizes=_feats(m.realizes),
                        form=m.form or EMPTY, position=m.position) + "\n")
    out.write("[COGSETS]\n")
    for cs in b.cogsets:
        out.write(_line(id=cs.id, category=cs.category, paradigms=",".join(cs.paradigms),
                        unmarked=_feats(cs.unmarked.assignments), state=",".join(cs.state),
                        priority=",".join(cs.priority), frozen=",".join(cs.frozen)) + "\n")
    out.write("[LEXEMES]\n")
    for lx in b.lexemes:
        out.write(_line(id=lx.id, radical=lx.radical, cogset=lx.cogset, gloss=lx.gloss,
                        sem=",".join(sorted(lx.semantic)),
                        conserve=",".join(f"{p}:{f}" for p, f in lx.conserve),
                        note=lx.note) + "\n")
    out.write("[CONTEXTS]\n")
    for c in b.contexts:
        out.write(_line(id=c.id, gloss=c.gloss) + "\n")
    out.write("[STATERULES]\n")
    for r in b.state_rules:
        out.write(_line(id=r.id, contexts=",".join(sorted(r.contexts)),
                        cogsets=",".join(sorted(r.cogsets)), assign=_feats(r.assignments)) + "\n")
    out.write("[PHONRULES]\n")
    for r in b.phon_rules:
        repl = None if r.replace is None else (r.replace or EMPTY)
        out.write(_line(id=r.id, kind=r.kind, match=r.match, replace=repl, left=r.left,
                        right=r.right, cond=_feats(r.cond), state=r.state) + "\n")
    return out.getvalue()


# -- packaged seed data ------------------------------------------------------

def seed_names() -> list[str]:
    data = resources.files("statekit") / "data"
    return sorted(p.name[:-len(".bundle")] for p in data.iterdir() if p.name.endswith(".bundle"))


def load_seed(name: str) -> LanguageBundle:
    name = name[:-len(".bundle")] if name.endswith(".bundle") else name
    path = resources.files("statekit") / "data" / f"{name}.bundle"
    if not path.is_file():
        raise NotFound(name, "seed bundle")
    return load_bundle(path.read_text(encoding="utf-8"))


def load_seeds() -> dict[str, LanguageBundle]:
    bundles = {}
    for name in seed_names():
        b = load_seed(name)
        bundles[b.language] = b
    return bundles


def gold_corpus_path():
    return resources.files("statekit") / "data" / "gold.tsv"
