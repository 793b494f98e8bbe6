"""Item selection by minimal symmetric difference.

A query feature set A is matched against stored items B. Only items sharing
at least one feature with A are feasible; among those the smallest |A Δ B|
wins. Layers are searched in a fixed order and the first layer holding any
feasible item decides.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, TextIO, Union

from .errors import NoFeasibleCandidate, ParseError

LAYER_ORDER = ("layer1-sign", "layer2-lexical", "layer3-syntactic")


def feature_set(tokens) -> frozenset:
    if isinstance(tokens, str):
        tokens = tokens.split(",")
    out = frozenset(t.strip() for t in tokens)
    if "" in out:
        raise ValueError("feature tokens must be non-empty")
    return out


def sym_diff_cost(a, b) -> int:
    return len(frozenset(a) ^ frozenset(b))


def feasible(a, b) -> bool:
    return not frozenset(a).isdisjoint(b)


def penalty(a, b) -> int:
    """Size mismatch; used only to stop sampling early."""
    return abs(len(a) - len(b))


@dataclass(frozen=True)
class SearchLayer:
    id: str
    candidates: tuple  # (item id, frozenset) pairs

    def __post_init__(self):
        if self.id not in LAYER_ORDER:
            raise ValueError(f"unknown layer {self.id!r}; expected one of {LAYER_ORDER}")
        object.__setattr__(self, "candidates",
                           tuple((str(i), feature_set(fs)) for i, fs in self.candidates))


@dataclass(frozen=True)
class SelectionResult:
    item: str
    cost: int
    layer: str
    exact: bool


def _ordered(layers: Iterable[SearchLayer]) -> list[SearchLayer]:
    layers = list(layers)
    ids = [l.id for l in layers]
    if len(set(ids)) != len(ids):
        raise ValueError("each layer may appear only once")
    return sorted(layers, key=lambda l: LAYER_ORDER.index(l.id))


def _check_query(query) -> frozenset:
    query = feature_set(query)
    if not query:
        raise ValueError("query must be non-empty")
    return query


def select_exhaustive(query, layers: Iterable[SearchLayer]) -> SelectionResult:
    query = _check_query(query)
    for layer in _ordered(layers):
        pool = [(sym_diff_cost(query, fs), item) for item, fs in layer.candidates if feasible(query, fs)]
        if pool:
            cost, item = min(pool)
            return SelectionResult(item, cost, layer.id, True)
    raise NoFeasibleCandidate()


def select_heuristic(query, layers: Iterable[SearchLayer], budget: int, seed: int) -> SelectionResult:
    """Seeded random sampling (with replacement) of feasible items, per layer.

    A layer is left as soon as a perfect match turns up (zero penalty and
    zero cost) or after ``budget`` draws."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    query = _check_query(query)
    rng = random.Random(seed)
    for layer in _ordered(layers):
        pool = [(item, fs) for item, fs in layer.candidates if feasible(query, fs)]
        if not pool:
            continue
        best: Optional[tuple[int, str]] = None
        for _ in range(budget):
            item, fs = pool[rng.randrange(len(pool))]
            cost = sym_diff_cost(query, fs)
            if best is None or (cost, item) < best:
                best = (cost, item)
            if penalty(query, fs) == 0 and cost == 0:
                break
        cost, item = best
        return SelectionResult(item, cost, layer.id, cost == 0)
    raise NoFeasibleCandidate()


def read_candidates(source: Union[str, TextIO, Iterable[str]]) -> list[SearchLayer]:
    """``layer<TAB>id<TAB>f1,f2,...`` per line; ``#`` comments and blanks skipped."""
    if isinstance(source, str):
        source = source.splitlines()
    grouped: dict[str, list] = {}
    for lineno, line in enumerate(source, start=1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cells = line.split("\t")
        if len(cells) != 3:
            raise ParseError(lineno, "expected layer<TAB>id<TAB>features")
        layer, item, feats = (c.strip() for c in cells)
        if layer not in LAYER_ORDER:
            raise ParseError(lineno, f"unknown layer {layer!r}")
        try:
            grouped.setdefault(layer, []).append((item, feature_set(feats)))
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
    return [SearchLayer(l, tuple(grouped[l])) for l in LAYER_ORDER if l in grouped]
