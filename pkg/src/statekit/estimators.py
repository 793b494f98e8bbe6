"""scikit-learn style wrappers around realization and selection."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_budget, check_rows, resolve_bundle
from .pipeline import realize
from .selection import LAYER_ORDER, SearchLayer, select_exhaustive, select_heuristic

MODES = ("exact", "heuristic")


class StateRealizer(TransformerMixin, BaseEstimator):
    """Map (lexeme, pushed, context) rows to surface forms.

    ``fit`` loads and validates the bundle; nothing is learned from data.
    """

    def __init__(self, bundle="rif", state_override=None):
        self.bundle = bundle
        self.state_override = state_override

    def fit(self, X=None, y=None):
        if self.state_override not in (None, "FS", "AS"):
            raise ValueError("state_override must be None, 'FS' or 'AS'")
        self.bundle_ = resolve_bundle(self.bundle)
        self.language_ = self.bundle_.language
        return self

    def transform(self, X):
        check_is_fitted(self, "bundle_")
        rows = check_rows(X)
        out = [realize(self.bundle_, lx, pushed, ctx, self.state_override)[0] for lx, pushed, ctx in rows]
        return np.asarray(out, dtype=object)

    def predict(self, X):
        return self.transform(X)

    def trace(self, lexeme, pushed="", context=""):
        check_is_fitted(self, "bundle_")
        return realize(self.bundle_, lexeme, pushed, context, self.state_override)[1]

    def score(self, X, y):
        """Fraction of rows whose surface equals ``y`` exactly."""
        got = self.transform(X)
        y = np.asarray(y, dtype=object)
        if got.shape != y.shape:
            raise ValueError("X and y differ in length")
        return float(np.mean(got == y)) if len(y) else 1.0


class SymDiffSelector(BaseEstimator):
    """Nearest stored item by symmetric difference, searched layer by layer.

    ``fit`` takes ``(layer, item, features)`` triples or SearchLayer objects.
    ``budget=None`` means one draw per stored candidate.
    """

    def __init__(self, mode="exact", budget=None, seed=0):
        self.mode = mode
        self.budget = budget
        self.seed = seed

    def fit(self, X, y=None):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        grouped: dict[str, list] = {}
        layers = []
        for entry in X:
            if isinstance(entry, SearchLayer):
                layers.append(entry)
                continue
            layer, item, feats = entry
            grouped.setdefault(layer, []).append((item, feats))
        layers += [SearchLayer(lid, tuple(c)) for lid, c in grouped.items()]
        if not layers:
            raise ValueError("no candidates given")
        self.layers_ = sorted(layers, key=lambda l: LAYER_ORDER.index(l.id))
        self.n_candidates_ = sum(len(l.candidates) for l in self.layers_)
        if self.budget is not None:
            check_budget(self.budget)
        return self

    def select(self, query):
        check_is_fitted(self, "layers_")
        if self.mode == "exact":
            return select_exhaustive(query, self.layers_)
        budget = self.n_candidates_ if self.budget is None else self.budget
        return select_heuristic(query, self.layers_, budget, self.seed)

    def predict(self, queries):
        return np.asarray([self.select(q).item for q in queries], dtype=object)
