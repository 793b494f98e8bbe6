"""Signed grammatical features, templates, paradigms and cognitive sets.

A template is a consistent set of signed features (``+SG``, ``-COL``...).
Undetermined features are simply absent; there is no third polarity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import ConflictingPolarity, UnknownParadigm

PARADIGM_KINDS = ("inner-intrinsic", "outer-intrinsic", "extrinsic")


@dataclass(frozen=True, order=True)
class SignedFeature:
    name: str
    positive: bool = True

    def __post_init__(self):
        if not self.name or not isinstance(self.name, str):
            raise ValueError("feature name must be a non-empty string")

    @classmethod
    def parse(cls, text: str) -> "SignedFeature":
        text = text.strip()
        if len(text) < 2 or text[0] not in "+-":
            raise ValueError(f"signed feature must look like +NAME or -NAME, got {text!r}")
        return cls(text[1:], text[0] == "+")

    def negate(self) -> "SignedFeature":
        return SignedFeature(self.name, not self.positive)

    def __str__(self):
        return ("+" if self.positive else "-") + self.name


def parse_features(spec) -> list[SignedFeature]:
    """Parse ``"+PL,+F"`` (or an iterable of tokens / SignedFeatures)."""
    if spec is None:
        return []
    if isinstance(spec, str):
        tokens = [tok for tok in spec.replace(" ", "").split(",") if tok]
    else:
        tokens = list(spec)
    return [tok if isinstance(tok, SignedFeature) else SignedFeature.parse(tok) for tok in tokens]


def _check_consistent(assignments: Iterable[SignedFeature]) -> frozenset[SignedFeature]:
    seen: dict[str, bool] = {}
    for f in assignments:
        if seen.get(f.name, f.positive) != f.positive:
            raise ConflictingPolarity(f.name)
        seen[f.name] = f.positive
    return frozenset(SignedFeature(n, p) for n, p in seen.items())


@dataclass(frozen=True)
class Template:
    category: str
    assignments: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.category:
            raise ValueError("template category must be non-empty")
        object.__setattr__(self, "assignments", _check_consistent(self.assignments))

    def value(self, name: str) -> Optional[bool]:
        """Polarity of ``name`` in the template, or None when undetermined."""
        for f in self.assignments:
            if f.name == name:
                return f.positive
        return None

    def has(self, feature: SignedFeature) -> bool:
        return feature in self.assignments

    def satisfies(self, features: Iterable[SignedFeature]) -> bool:
        return all(f in self.assignments for f in features)

    def project(self, names: Iterable[str]) -> frozenset[SignedFeature]:
        names = set(names)
        return frozenset(f for f in self.assignments if f.name in names)

    @property
    def names(self) -> frozenset[str]:
        return frozenset(f.name for f in self.assignments)

    def format(self, order: Optional[Iterable[str]] = None) -> str:
        rank = {n: i for i, n in enumerate(order or ())}
        feats = sorted(self.assignments, key=lambda f: (rank.get(f.name, len(rank)), f.name))
        return "{" + ", ".join([self.category] + [str(f) for f in feats]) + "}"

    def __str__(self):
        return self.format()


def make_template(category: str, assignments=()) -> Template:
    """Build a template; raises ConflictingPolarity on ``+f`` together with ``-f``."""
    return Template(category, frozenset(parse_features(assignments)))


def assign(t: Template, overrides=()) -> Template:
    """Set the polarity of every overridden feature, keeping ``t`` elsewhere."""
    overrides = _check_consistent(parse_features(overrides))
    names = {f.name for f in overrides}
    kept = frozenset(f for f in t.assignments if f.name not in names)
    return Template(t.category, kept | overrides)


@dataclass(frozen=True)
class Paradigm:
    id: str
    members: tuple
    kind: str
    unmarked: Optional[str] = None
    slot: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.id:
            raise ValueError("paradigm id must be non-empty")
        if not self.members:
            raise ValueError(f"paradigm {self.id!r} has no members")
        if len(set(self.members)) != len(self.members):
            raise ValueError(f"paradigm {self.id!r} lists a member twice")
        if self.kind not in PARADIGM_KINDS:
            raise ValueError(f"paradigm {self.id!r}: unknown kind {self.kind!r}")
        if self.unmarked is not None and self.unmarked not in self.members:
            raise ValueError(f"paradigm {self.id!r}: unmarked member {self.unmarked!r} not in members")
        if self.intrinsic and self.unmarked is None:
            raise ValueError(f"intrinsic paradigm {self.id!r} needs an unmarked member")

    @property
    def intrinsic(self) -> bool:
        return self.kind != "extrinsic"

    @property
    def exclusive(self) -> bool:
        # several members: at most one may be positive at a time
        return len(self.members) > 1

    def expand(self, feature: SignedFeature) -> list[SignedFeature]:
        """Complete ``+member`` with the negation of the other members."""
        if feature.name not in self.members:
            raise ValueError(f"{feature} is not a member of paradigm {self.id!r}")
        if feature.positive and self.exclusive:
            return [feature] + [SignedFeature(m, False) for m in self.members if m != feature.name]
        return [feature]

    def unmarked_assignment(self) -> list[SignedFeature]:
        if self.unmarked is None:
            return []
        return self.expand(SignedFeature(self.unmarked, True))


@dataclass(frozen=True)
class CognitiveSet:
    id: str
    language: str
    category: str
    paradigms: tuple
    unmarked: Template
    state: tuple = ()
    priority: tuple = ()
    frozen: tuple = ()

    def __post_init__(self):
        for name in ("paradigms", "state", "priority", "frozen"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.id:
            raise ValueError("cognitive set id must be non-empty")
        stray = set(self.state) - set(self.paradigms)
        if stray:
            raise ValueError(f"cognitive set {self.id!r}: state-governed paradigms {sorted(stray)} are not intrinsic")


def unmarked_of(cs: CognitiveSet) -> Template:
    return cs.unmarked


def paradigm_value(t: Template, paradigm: Paradigm) -> tuple:
    """Polarity of each member, in member order (None when undetermined)."""
    return tuple(t.value(m) for m in paradigm.members)


def is_marked(cs: CognitiveSet, t: Template, paradigm: Paradigm) -> bool:
    """True iff ``t`` departs from the set's unmarked template on ``paradigm``."""
    if paradigm.id not in cs.paradigms:
        raise UnknownParadigm(paradigm.id)
    return paradigm_value(t, paradigm) != paradigm_value(cs.unmarked, paradigm)
