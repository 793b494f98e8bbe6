"""Ordered spell-out cascade.

Pieces are joined into a boundary-annotated string: ``#`` at both word edges,
``-`` between affixes, a space after a proclitic or before an enclitic, and
``∅`` standing in for every unformed marker. Rules run once each, in
declaration order, left to right; the boundaries and ``∅`` are stripped at
the end.

Pattern syntax (``match``, ``left``, ``right``)::

    {V} {C}   vowel / consonant class
    [abc]     any one of the listed symbols
    _         the clitic boundary (a space)
    anything else is a literal symbol (``#``, ``-`` and ``∅`` included)
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

from .errors import VetoFired
from .features import Template

if TYPE_CHECKING:
    from .lexicon import Marker

NULL = "∅"
EDGE = "#"
BOUNDARY = "-"
CLITIC = " "

_LOWER_VOWELS = (
    "aeiouyəɛɔɪʊæøœɑɐɨʉɯ"
    "àáâãäåèéêëìíîïòóôõöùúûüýÿāēīōū"
    "αεηιουωάέήίόύώϊϋΐΰ"
)
VOWELS = _LOWER_VOWELS + _LOWER_VOWELS.upper()
_VOWEL_CLASS = "[" + re.escape(VOWELS) + "]"
_CONSONANT_CLASS = r"[^\W\d_" + re.escape(VOWELS) + "]"

RULE_KINDS = ("rewrite", "veto")


def compile_pattern(pattern: str) -> str:
    """Translate the rule pattern syntax into a regular expression."""
    out = []
    i = 0
    while i < len(pattern):
        ch = pattern[i]
        if pattern.startswith("{V}", i):
            out.append(_VOWEL_CLASS)
            i += 3
        elif pattern.startswith("{C}", i):
            out.append(_CONSONANT_CLASS)
            i += 3
        elif ch == "[":
            end = pattern.find("]", i)
            if end <= i + 1:
                raise ValueError(f"unterminated or empty symbol set in {pattern!r}")
            out.append("[" + re.escape(pattern[i + 1:end]) + "]")
            i = end + 1
        elif ch == "_":
            out.append(re.escape(CLITIC))
            i += 1
        else:
            out.append(re.escape(ch))
            i += 1
    return "".join(out)


@dataclass(frozen=True)
class PhonRule:
    id: str
    kind: str
    match: str
    replace: Optional[str] = None
    left: str = ""
    right: str = ""
    cond: tuple = ()
    state: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "cond", tuple(self.cond))
        if self.kind not in RULE_KINDS:
            raise ValueError(f"rule {self.id!r}: unknown kind {self.kind!r}")
        if not self.match:
            raise ValueError(f"rule {self.id!r}: empty match pattern")
        if self.kind == "rewrite" and self.replace is None:
            raise ValueError(f"rewrite rule {self.id!r} needs a replacement")
        if self.kind == "veto" and self.replace is not None:
            raise ValueError(f"veto rule {self.id!r} cannot carry a replacement")
        if self.state not in (None, "FS", "AS"):
            raise ValueError(f"rule {self.id!r}: state must be FS or AS")
        lb = f"(?<={compile_pattern(self.left)})" if self.left else ""
        la = f"(?={compile_pattern(self.right)})" if self.right else ""
        object.__setattr__(self, "_regex", re.compile(lb + compile_pattern(self.match) + la))

    @property
    def regex(self) -> re.Pattern:
        return self._regex

    def applies_to(self, t: Template, state: Optional[str] = None) -> bool:
        if not t.satisfies(self.cond):
            return False
        return self.state is None or state is None or self.state == state

    def replacement(self) -> str:
        return (self.replace or "").replace("_", CLITIC)


@dataclass(frozen=True)
class Piece:
    form: str
    origin: str  # "radical" or "marker:<paradigm>"
    position: str = "prefix"

    @property
    def text(self) -> str:
        return self.form if self.form else NULL


@dataclass(frozen=True)
class MorphSequence:
    pieces: tuple
    template: Template
    state: str = "FS"

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        radicals = sum(1 for p in self.pieces if p.origin == "radical")
        if radicals != 1:
            raise ValueError(f"a morph sequence needs exactly one radical piece, got {radicals}")

    def underlying(self) -> str:
        parts = []
        for i, piece in enumerate(self.pieces):
            if i:
                prev = self.pieces[i - 1]
                clitic = prev.position == "proclitic" or piece.position == "enclitic"
                parts.append(CLITIC if clitic else BOUNDARY)
            parts.append(piece.text)
        return EDGE + "".join(parts) + EDGE


@dataclass(frozen=True)
class SpellOut:
    surface: str
    fired: tuple
    underlying: str
    steps: tuple = field(default=())


def clean_surface(text: str) -> str:
    for sym in (EDGE, BOUNDARY, NULL):
        text = text.replace(sym, "")
    return " ".join(text.split())


def _rules(b):
    return getattr(b, "phon_rules", b)


def spell_out(b, seq: MorphSequence) -> SpellOut:
    """Run the cascade of ``b`` (a bundle or a plain rule list) over ``seq``."""
    text = seq.underlying()
    start = text
    fired, steps = [], []
    for rule in _rules(b):
        if not rule.applies_to(seq.template, seq.state):
            continue
        if rule.kind == "veto":
            if rule.regex.search(text):
                raise VetoFired(rule.id)
            continue
        new, n = rule.regex.subn(rule.replacement(), text)
        if n:
            fired.append(rule.id)
            steps.append((rule.id, text, new))
            text = new
    return SpellOut(clean_surface(text), tuple(fired), start, tuple(steps))


def check_veto(b, marker: "Marker", following: str, t: Template, state: Optional[str] = None) -> Optional[str]:
    """Id of the first veto rule blocking ``marker`` next to ``following``."""
    form = marker.form or NULL
    if marker.position == "suffix":
        text = EDGE + following + BOUNDARY + form + EDGE
    elif marker.position == "enclitic":
        text = EDGE + following + CLITIC + form + EDGE
    else:
        pre = marker.pre if marker.position == "circumfix" else form
        joiner = CLITIC if marker.position == "proclitic" else BOUNDARY
        text = EDGE + (pre or NULL) + joiner + following + EDGE
    for rule in _rules(b):
        if rule.kind == "veto" and rule.applies_to(t, state) and rule.regex.search(text):
            return rule.id
    return None
