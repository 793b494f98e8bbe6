"""statekit: rule-driven noun marking with free and annexation states.

Load a language bundle, then realize word-forms::

    >>> from statekit import load_seed, realize
    >>> realize(load_seed("rif"), "qzin", "", "GEN")[0]
    'uqzin'
"""
from .errors import (AmbiguousMarker, ConflictingPolarity, DanglingReference, DuplicateId,
                     InvalidBundle, IrresolvableParadigm, NoFeasibleCandidate, NoMarker, NotFound,
                     ParseError, StageError, StatekitError, UnknownCognitiveSet, UnknownContext,
                     UnknownParadigm, VetoFired)
from .estimators import StateRealizer, SymDiffSelector
from .features import (CognitiveSet, Paradigm, SignedFeature, Template, assign, is_marked,
                       make_template, parse_features, unmarked_of)
from .lexicon import (LanguageBundle, Marker, SignMatrix, load_bundle, load_seed, load_seeds,
                      lookup_lexeme, marker_for, parse_bundle, read_bundle, serialize_bundle,
                      validate_bundle)
from .marking import MarkingRequest, ResolvedMarking, convert, markedness_report, resolve_marking
from .morphophon import MorphSequence, Piece, PhonRule, check_veto, spell_out
from .pipeline import DerivationTrace, GoldRow, check_corpus, read_corpus, realize
from .selection import (SearchLayer, SelectionResult, feasible, select_exhaustive,
                        select_heuristic, sym_diff_cost)
from .state import StateRule, SyntacticContext, apply_state, is_as_context, list_contexts

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
