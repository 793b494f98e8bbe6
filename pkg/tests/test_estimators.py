import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from statekit import StateRealizer, SymDiffSelector
from statekit.lexicon import load_seed


def test_realizer_transform():
    r = StateRealizer(bundle="rif").fit()
    out = r.transform([("qzin", "", "OBJ"), {"lexeme": "qzin", "context": "GEN"}, ("qzin", "+PL", "NUM")])
    assert isinstance(out, np.ndarray) and out.tolist() == ["aqzin", "uqzin", "jeqzinen"]
    assert r.language_ == "rif"


def test_realizer_params_and_clone():
    r = StateRealizer(bundle="en", state_override="FS")
    assert r.get_params() == {"bundle": "en", "state_override": "FS"}
    c = clone(r)
    assert c.get_params() == r.get_params() and not hasattr(c, "bundle_")
    assert c.set_params(state_override=None).state_override is None


def test_realizer_override():
    rows = [("nature-U", "+DEF", "PART-OF")]
    assert StateRealizer("en").fit().transform(rows).tolist() == ["nature"]
    assert StateRealizer("en", state_override="FS").fit().transform(rows).tolist() == ["the nature"]


def test_realizer_accepts_bundle_object_and_scores():
    r = StateRealizer(bundle=load_seed("fr"))
    X = [("âme", "", "OBJ"), ("âme", "+POSS1SG", "OBJ")]
    assert r.fit(X).score(X, ["l'âme", "mon âme"]) == 1.0
    assert r.score(X, ["l'âme", "ma âme"]) == 0.5
    assert "poss-fem-prevocalic" in str(r.trace("âme", "+POSS1SG", "OBJ"))


def test_realizer_validation():
    with pytest.raises(NotFittedError):
        StateRealizer().transform([("qzin", "", "OBJ")])
    r = StateRealizer().fit()
    with pytest.raises(ValueError):
        r.transform([("qzin", "OBJ")])
    with pytest.raises(TypeError):
        r.transform("qzin")
    with pytest.raises(ValueError):
        StateRealizer(state_override="XS").fit()


def test_selector():
    cands = [("layer1-sign", "m1", {"man", "adult"}), ("layer2-lexical", "x", {"man", "old"})]
    sel = SymDiffSelector().fit(cands)
    assert sel.predict([{"man", "adult"}, {"old"}]).tolist() == ["m1", "x"]
    h = SymDiffSelector(mode="heuristic", seed=2).fit(cands)
    assert h.select({"man", "adult"}).cost == 0
    assert clone(h).get_params() == {"mode": "heuristic", "budget": None, "seed": 2}


def test_selector_validation():
    with pytest.raises(ValueError):
        SymDiffSelector(mode="fuzzy").fit([("layer1-sign", "a", {"x"})])
    with pytest.raises(ValueError):
        SymDiffSelector(budget=0).fit([("layer1-sign", "a", {"x"})])
    with pytest.raises(ValueError):
        SymDiffSelector().fit([])
    with pytest.raises(NotFittedError):
        SymDiffSelector().select({"x"})
