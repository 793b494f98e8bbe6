"""Input checks shared by the estimators and the CLI."""
from __future__ import annotations

import os
from typing import Union

from .lexicon import LanguageBundle, load_seed, read_bundle

ROW_FIELDS = ("lexeme", "pushed", "context")


def resolve_bundle(spec: Union[str, os.PathLike, LanguageBundle]) -> LanguageBundle:
    """A bundle object, a path to a bundle file, or a packaged seed name."""
    if isinstance(spec, LanguageBundle):
        return spec
    if spec is None or spec == "":
        raise ValueError("a bundle (object, path or seed name) is required")
    if os.path.isfile(spec):
        return read_bundle(spec)
    return load_seed(os.path.basename(str(spec)))


def check_rows(X) -> list[tuple[str, str, str]]:
    """Normalize requests to (lexeme, pushed, context) string triples.

    Accepts sequences of triples, of dicts keyed by ROW_FIELDS, or a 2-D array."""
    if isinstance(X, (str, bytes)):
        raise TypeError("expected a sequence of requests, got a single string")
    rows = []
    for i, row in enumerate(X):
        if isinstance(row, dict):
            missing = [k for k in ("lexeme", "context") if k not in row]
            if missing:
                raise ValueError(f"row {i}: missing {missing}")
            row = (row["lexeme"], row.get("pushed", ""), row["context"])
        row = tuple(row)
        if len(row) != 3:
            raise ValueError(f"row {i}: expected 3 fields {ROW_FIELDS}, got {len(row)}")
        lexeme, pushed, context = ("" if v is None else str(v) for v in row)
        if not lexeme or not context:
            raise ValueError(f"row {i}: lexeme and context must be non-empty")
        rows.append((lexeme, pushed, context))
    return rows


def check_budget(budget) -> int:
    if isinstance(budget, bool) or not isinstance(budget, int) or budget < 1:
        raise ValueError(f"budget must be a positive integer, got {budget!r}")
    return budget
