import itertools

import pytest

from statekit import NoFeasibleCandidate, ParseError, SearchLayer, feasible, select_exhaustive, select_heuristic, sym_diff_cost
from statekit.selection import read_candidates


def test_cost_examples():
    assert sym_diff_cost({"x", "y"}, {"x", "y"}) == 0
    assert sym_diff_cost({"x"}, {"y"}) == 2
    assert sym_diff_cost(set(), {"a", "b"}) == 2


def test_feasible():
    assert feasible({"x"}, {"x", "y"})
    assert not feasible({"x"}, {"y"})
    assert not feasible(set(), {"x"})


def test_exact_match_layer1():
    layers = [SearchLayer("layer1-sign", (("m1", {"man", "adult"}), ("w1", {"woman", "adult"})))]
    assert select_exhaustive({"man", "adult"}, layers).item == "m1"
    assert select_exhaustive({"man", "adult"}, layers).cost == 0


def test_falls_through_to_next_layer():
    layers = [SearchLayer("layer1-sign", (("a", {"tree"}),)),
              SearchLayer("layer2-lexical", (("x", {"man", "old"}),))]
    res = select_exhaustive({"man"}, layers)
    assert (res.item, res.layer, res.cost, res.exact) == ("x", "layer2-lexical", 1, True)


def test_layer_order_is_fixed_regardless_of_input_order():
    layers = [SearchLayer("layer3-syntactic", (("s", {"q"}),)), SearchLayer("layer1-sign", (("a", {"q", "r", "t"}),))]
    assert select_exhaustive({"q"}, layers).item == "a"


def test_lexicographic_tie_break():
    layers = [SearchLayer("layer1-sign", (("b", {"x", "y"}), ("a", {"x", "z"})))]
    assert select_exhaustive({"x"}, layers).item == "a"


def test_no_feasible():
    with pytest.raises(NoFeasibleCandidate):
        select_exhaustive({"q"}, [SearchLayer("layer1-sign", (("a", {"z"}),))])
    with pytest.raises(NoFeasibleCandidate):
        select_heuristic({"q"}, [], budget=3, seed=0)


def test_bad_inputs():
    with pytest.raises(ValueError):
        select_exhaustive(set(), [])
    with pytest.raises(ValueError):
        select_heuristic({"a"}, [], budget=0, seed=0)
    with pytest.raises(ValueError):
        SearchLayer("layer9", ())
    with pytest.raises(ValueError):
        SearchLayer("layer1-sign", (("a", {""}),))


def test_heuristic_finds_perfect_match_and_is_deterministic():
    layers = [SearchLayer("layer1-sign", tuple((f"i{k}", {f"f{k}", "shared"}) for k in range(6)) + (("hit", {"q", "shared"}),))]
    res = select_heuristic({"q", "shared"}, layers, budget=500, seed=3)
    assert res.item == "hit" and res.exact and res.cost == 0
    assert select_heuristic({"q", "f1"}, layers, 3, 11) == select_heuristic({"q", "f1"}, layers, 3, 11)


def test_heuristic_budget_one_uses_first_feasible_layer():
    layers = [SearchLayer("layer1-sign", (("a", {"q", "r"}),)), SearchLayer("layer2-lexical", (("b", {"q"}),))]
    res = select_heuristic({"q"}, layers, budget=1, seed=0)
    assert res.layer == "layer1-sign" and res.cost == 1 and not res.exact


def test_read_candidates():
    text = "# comment\nlayer2-lexical\tx\tman,old\nlayer1-sign\ta\ttree\n\nlayer1-sign\tb\tman\n"
    layers = read_candidates(text)
    assert [l.id for l in layers] == ["layer1-sign", "layer2-lexical"]
    assert layers[0].candidates == (("a", frozenset({"tree"})), ("b", frozenset({"man"})))
    with pytest.raises(ParseError) as exc:
        read_candidates("layer1-sign\tonly-two")
    assert exc.value.line == 1
    with pytest.raises(ParseError):
        read_candidates("layerX\ta\tb")


def test_metric_exhaustively_on_small_universe():
    universe = ["a", "b", "c"]
    subsets = [frozenset(c) for r in range(4) for c in itertools.combinations(universe, r)]
    for x, y, z in itertools.product(subsets, repeat=3):
        assert sym_diff_cost(x, z) <= sym_diff_cost(x, y) + sym_diff_cost(y, z)
        assert sym_diff_cost(x, y) == sym_diff_cost(y, x)
        assert (sym_diff_cost(x, y) == 0) == (x == y)
