"""Push/pull marker resolution, conversion and markedness tables.

Resolution order for one lexeme:

1. start from the unmarked template of the lexeme's cognitive set (pull);
2. apply the pushed (speaker-intended) features, push beating pull;
3. apply the lexeme's conserved pulls, unless a push leaves them without a form;
4. apply the state for the syntactic context;
5. pick one marker per paradigm;
6. when a pushed marker has no cell or is vetoed by a phonological rule, fall
   back to the pull value of the competing features;
7. let markers sharing a morphological slot compete (push first, then the
   cognitive set's priority list).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import IrresolvableParadigm, NoMarker, StatekitError, UnknownCognitiveSet
from .features import (CognitiveSet, Paradigm, SignedFeature, Template, assign,
                       paradigm_value, parse_features, unmarked_of)
from .lexicon import LanguageBundle, Marker, SignMatrix, lookup_lexeme, marker_for
from .morphophon import check_veto
from .state import covering_rule

SOURCES = ("push", "pull", "fallback")
OVERRIDES = (None, "FS", "AS")


@dataclass(frozen=True)
class MarkingRequest:
    lexeme: str
    pushed: tuple = ()
    context: str = ""

    def __post_init__(self):
        pushed = tuple(parse_features(self.pushed))
        Template("_", frozenset(pushed))  # raises ConflictingPolarity
        object.__setattr__(self, "pushed", pushed)


@dataclass(frozen=True)
class MarkerChoice:
    paradigm: str
    marker: Marker
    source: str


PHASES = ("unmarked", "push", "conserve", "state", "markers", "phon", "surface")
_PHASE_OF = {"unmarked": "unmarked", "push": "push", "conserve": "conserve", "state": "state"}


@dataclass(frozen=True)
class Event:
    stage: str
    text: str
    paradigm: Optional[str] = None
    phase: str = ""

    def __post_init__(self):
        if not self.phase:
            object.__setattr__(self, "phase", _PHASE_OF.get(self.stage, "markers"))

    def __str__(self):
        return f"{self.stage}: {self.text}"


@dataclass
class ResolvedMarking:
    lexeme: SignMatrix
    cogset: CognitiveSet
    template: Template
    markers: list
    state: str
    rule: Optional[str]
    events: list = field(default_factory=list)

    @property
    def trace(self) -> list[str]:
        return [str(e) for e in self.events]

    def choice(self, paradigm: str) -> Optional[MarkerChoice]:
        for c in self.markers:
            if c.paradigm == paradigm:
                return c
        return None

    def undetermined(self) -> set[str]:
        return {e.paradigm for e in self.events if e.stage == "undetermined"}


def expand_push(b: LanguageBundle, pushed) -> list[SignedFeature]:
    """Complete each ``+member`` with the negation of its paradigm siblings."""
    out: list[SignedFeature] = []
    for f in parse_features(pushed):
        p = b.feature_paradigm.get(f.name)
        out.extend(p.expand(f) if p is not None else [f])
    Template("_", frozenset(out))
    return out


def _feats(fs) -> str:
    return ",".join(str(f) for f in fs) or "(none)"


def _revert_to_pull(t: Template, cs: CognitiveSet, p: Paradigm) -> Template:
    return assign(t, cs.unmarked.project(p.members))


def _unmarked_for_lookup(b: LanguageBundle, t: Template, marker: Marker) -> Template:
    """``t`` with every foreign feature the marker spells out reset to its
    paradigm's unmarked member (e.g. +F -> +M for a vetoed feminine form)."""
    out = t
    for f in marker.realizes:
        q = b.feature_paradigm.get(f.name)
        if q is None or q.id == marker.paradigm or q.unmarked is None:
            continue
        if t.value(q.unmarked) is not True:
            out = assign(out, q.unmarked_assignment())
    return out


def _conserved_pull_blocker(b, cs, p: Paradigm, fname: str, marked_pushes) -> Optional[SignedFeature]:
    """A marked push that no marker carrying the conserved value can express.

    A collective without a plural form cannot compete with a pushed plural."""
    carriers = [m for m in b.markers_of(p.id) if SignedFeature(fname, True) in m.realizes]
    for g in marked_pushes:
        q = b.feature_paradigm.get(g.name)
        if q is None or q.id == p.id:
            continue
        if not any(n.name in q.members for m in carriers for n in m.realizes):
            return g
    return None


def resolve_marking(b: LanguageBundle, req: MarkingRequest, state_override: Optional[str] = None) -> ResolvedMarking:
    if state_override not in OVERRIDES:
        raise ValueError(f"state_override must be one of {OVERRIDES}")
    lex = lookup_lexeme(b, req.lexeme)
    cs = b.cogset(lex.cogset)
    events: list[Event] = []

    t = unmarked_of(cs)
    events.append(Event("unmarked", f"{cs.id} {t}"))

    pushed = expand_push(b, req.pushed)
    pushed_paradigms: set[str] = set()
    allowed = []
    for f in pushed:
        p = b.feature_paradigm.get(f.name)
        if p is not None and p.id in cs.frozen:
            if f.positive != cs.unmarked.value(f.name):
                events.append(Event("fallback", f"push {f} refused: {p.id} does not inflect in {cs.id} (gap)",
                                    p.id, phase="push"))
            continue
        allowed.append(f)
        if p is not None:
            pushed_paradigms.add(p.id)
    t = assign(t, allowed)
    events.append(Event("push", _feats(allowed)))

    marked_pushes = [f for f in allowed if f.positive and cs.unmarked.value(f.name) is not True]
    for pid, fname in lex.conserve:
        p = b.paradigm(pid)
        if pid in pushed_paradigms:
            events.append(Event("conserve", f"{pid}:{fname} overridden by push", pid))
            continue
        blocker = _conserved_pull_blocker(b, cs, p, fname, marked_pushes)
        if blocker is not None:
            events.append(Event("conserve", f"{pid}:{fname} blocked: no {fname} form carries pushed {blocker}", pid))
            continue
        t = assign(t, p.expand(SignedFeature(fname, True)))
        events.append(Event("conserve", f"{pid}:{fname} kept over {p.unmarked}", pid))

    if req.context not in b.context_index:
        covering_rule(b, req.context, cs)  # raises UnknownContext
    rule = covering_rule(b, req.context, cs)
    state = "AS" if rule is not None else "FS"
    rule_id = rule.id if rule is not None else None
    if state_override == "FS" and rule is not None:
        events.append(Event("state", f"override: FS forced in AS context {req.context} (rule {rule.id} skipped)"))
        state, rule = "FS", None
    elif state_override == "AS" and rule is None:
        rule = next((r for r in b.state_rules if cs.id in r.cogsets), None)
        if rule is None:
            raise IrresolvableParadigm("state", f"no state rule governs {cs.id}")
        events.append(Event("state", f"override: AS forced in FS context {req.context} (rule {rule.id})"))
        state, rule_id = "AS", rule.id
    if rule is not None:
        before = t
        t = assign(t, rule.assignments)
        if state_override is None:
            events.append(Event("state", f"{req.context} -> AS by {rule.id}: {_feats(rule.assignments)}"))
        for f in allowed:
            if not t.has(f) and before.has(f):
                owner = b.feature_paradigm.get(f.name)
                events.append(Event("state", f"pushed {f} replaced by the state", owner.id if owner else None))
    elif state_override is None:
        events.append(Event("state", f"{req.context} -> FS (identity)"))

    choices: dict[str, MarkerChoice] = {}
    declared = [p for p in b.paradigms
                if p.id in cs.paradigms or (not p.intrinsic and t.names & set(p.members))]
    for p in b.paradigms:
        if not p.intrinsic and p not in declared:
            events.append(Event("undetermined", f"{p.id} (extrinsic, not requested)", p.id))
    for p in declared:
        source = "push" if p.id in pushed_paradigms else "pull"
        try:
            m = marker_for(b, p, t)
        except NoMarker:
            if source != "push":
                if not p.intrinsic:
                    events.append(Event("undetermined", f"{p.id} has no marker for {t}", p.id))
                    continue
                raise IrresolvableParadigm(p.id, f"no marker realizes {t}") from None
            t = _revert_to_pull(t, cs, p) if p.intrinsic else t
            try:
                m = marker_for(b, p, t)
            except NoMarker:
                raise IrresolvableParadigm(p.id, "neither the pushed nor the pull value has a marker") from None
            events.append(Event("fallback", f"{p.id}: pushed value has no cell (NoMarker); pull marker {m} used", p.id))
            source = "fallback"
        choices[p.id] = MarkerChoice(p.id, m, source)

    for pid, choice in list(choices.items()):
        if choice.source != "push" or not choice.marker.formed:
            continue
        vetoed = check_veto(b, choice.marker, lex.radical, t, state)
        if vetoed is None:
            continue
        events.append(Event("veto", f"{vetoed} blocks {choice.marker} before {lex.radical}", pid))
        try:
            alt = marker_for(b, pid, _unmarked_for_lookup(b, t, choice.marker))
        except NoMarker:
            alt = None
        if alt is None or alt == choice.marker or check_veto(b, alt, lex.radical, t, state):
            raise IrresolvableParadigm(pid, f"veto {vetoed} and no unblocked fallback")
        events.append(Event("fallback", f"{pid}: {choice.marker} -> {alt} (unmarked value takes the slot)", pid))
        choices[pid] = MarkerChoice(pid, alt, "fallback")

    _slot_competition(b, cs, choices, events)

    ordered = [choices[p.id] for p in declared if p.id in choices]
    for c in ordered:
        events.append(Event("marker", f"{c.paradigm}: {c.marker} [{c.source}]", c.paradigm))
    return ResolvedMarking(lex, cs, t, ordered, state, rule_id, events)


def _slot_competition(b, cs, choices: dict, events: list) -> None:
    slots: dict[str, list[MarkerChoice]] = {}
    for c in choices.values():
        p = b.paradigm(c.paradigm)
        if p.slot is None:
            continue
        if any(f.positive and f.name in p.members for f in c.marker.realizes):
            slots.setdefault(p.slot, []).append(c)
    order = {pid: i for i, pid in enumerate(cs.priority)}
    declared = {p.id: i for i, p in enumerate(b.paradigms)}
    for slot, rivals in slots.items():
        if len(rivals) < 2:
            continue
        rivals.sort(key=lambda c: (c.source == "pull", order.get(c.paradigm, len(order)), declared[c.paradigm]))
        winner = rivals[0]
        for loser in rivals[1:]:
            del choices[loser.paradigm]
            events.append(Event("undetermined",
                                f"{loser.paradigm} ({loser.marker}) loses slot {slot} to {winner.paradigm} ({winner.marker})",
                                loser.paradigm))


def convert(b: LanguageBundle, donor, target_set: str, semantic_inputs=(), conserve=(),
            new_id: Optional[str] = None, gloss: str = "") -> SignMatrix:
    """Clone a form into a new sign matrix of ``target_set``.

    ``donor`` is a SignMatrix (its radical is cloned) or the surface text of
    a word-form or phrase. Nothing semantic is inherited from the donor."""
    if target_set not in b.cogset_index:
        raise UnknownCognitiveSet(target_set)
    form = donor.radical if isinstance(donor, SignMatrix) else str(donor)
    if not form:
        raise ValueError("donor has no surface form to clone")
    conserve = tuple(tuple(c) if not isinstance(c, str) else tuple(c.split(":", 1)) for c in conserve)
    cs = b.cogset(target_set)
    for pid, fname in conserve:
        if pid not in cs.paradigms or fname not in b.paradigm(pid).members:
            raise IrresolvableParadigm(pid, f"cannot conserve {fname} in {target_set}")
    return SignMatrix(new_id or f"{form}>{target_set}", form, target_set, gloss,
                      frozenset(semantic_inputs), conserve)


@dataclass(frozen=True)
class MarkednessEntry:
    paradigm: str
    unmarked: tuple
    marked: tuple

    def describe(self) -> str:
        def show(value):
            pos = [f.name for f in value if f.positive]
            if len(value) == 1:
                return str(value[0])
            return ",".join(pos) or "-"
        marked = "; ".join(show(v) for v in self.marked) or "none"
        return f"{self.paradigm}: unmarked {show(self.unmarked)}, marked {marked}"


def _effective_unmarked(b, lex: SignMatrix, cs: CognitiveSet) -> Template:
    t = cs.unmarked
    for pid, fname in lex.conserve:
        t = assign(t, b.paradigm(pid).expand(SignedFeature(fname, True)))
    return t


def markedness_report(b: LanguageBundle, lexeme: str) -> list[MarkednessEntry]:
    """Per intrinsic paradigm: the unmarked value and the values inflection reaches."""
    lex = lookup_lexeme(b, lexeme)
    cs = b.cogset(lex.cogset)
    base = _effective_unmarked(b, lex, cs)
    report = []
    for pid in cs.paradigms:
        p = b.paradigm(pid)
        unmarked = tuple(f for f in sorted(base.project(p.members), key=lambda f: p.members.index(f.name)))
        reached = []
        if pid in cs.state:
            for rule in b.state_rules:
                if cs.id in rule.cogsets:
                    reached.append(assign(base, rule.assignments))
        elif pid not in cs.frozen:
            for member in p.members:
                for value in (True, False) if len(p.members) == 1 else (True,):
                    f = SignedFeature(member, value)
                    if base.has(f):
                        continue
                    try:
                        t = assign(base, p.expand(f))
                        marker_for(b, p, t)
                    except StatekitError:
                        continue
                    reached.append(t)
        marked = []
        for t in reached:
            value = tuple(f for f in sorted(t.project(p.members), key=lambda f: p.members.index(f.name)))
            if paradigm_value(t, p) != paradigm_value(base, p) and value not in marked:
                marked.append(value)
        report.append(MarkednessEntry(pid, unmarked, tuple(marked)))
    return report
