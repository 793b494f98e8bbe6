"""The state function: syntactic context x template -> template.

Contexts are opaque identifiers handed in by the caller. A state rule keys on
(context, cognitive set) pairs and *sets* target polarities, so applying it
twice is the same as applying it once. Contexts no rule covers are free-state
contexts and leave the template untouched.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Union

from .errors import UnknownCognitiveSet, UnknownContext
from .features import CognitiveSet, Template, assign

if TYPE_CHECKING:
    from .lexicon import LanguageBundle


@dataclass(frozen=True)
class SyntacticContext:
    id: str
    language: str
    gloss: str = ""


@dataclass(frozen=True)
class StateRule:
    id: str
    language: str
    contexts: frozenset
    cogsets: frozenset
    assignments: tuple

    def covers(self, context_id: str, cogset_id: str) -> bool:
        return context_id in self.contexts and cogset_id in self.cogsets


ContextRef = Union[str, SyntacticContext]
CogsetRef = Union[str, CognitiveSet]


def _context_id(b: "LanguageBundle", c: ContextRef) -> str:
    cid = c.id if isinstance(c, SyntacticContext) else c
    if cid not in b.context_index:
        raise UnknownContext(cid)
    return cid


def _cogset_id(b: "LanguageBundle", cs: CogsetRef) -> str:
    if isinstance(cs, CognitiveSet):
        return cs.id
    if cs not in b.cogset_index:
        raise UnknownCognitiveSet(cs)
    return cs


def covering_rule(b: "LanguageBundle", c: ContextRef, cs: CogsetRef) -> Optional[StateRule]:
    """First state rule (declaration order) covering the pair, if any."""
    cid, sid = _context_id(b, c), _cogset_id(b, cs)
    for rule in b.state_rules:
        if rule.covers(cid, sid):
            return rule
    return None


def apply_state(b: "LanguageBundle", c: ContextRef, cs: CogsetRef, t: Template) -> Template:
    rule = covering_rule(b, c, cs)
    if rule is None:
        return t
    return assign(t, rule.assignments)


def is_as_context(b: "LanguageBundle", c: ContextRef, cs: CogsetRef) -> bool:
    return covering_rule(b, c, cs) is not None


def list_contexts(b: "LanguageBundle") -> list[SyntacticContext]:
    return list(b.contexts)
