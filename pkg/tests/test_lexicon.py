import io
import unicodedata

import pytest

from statekit import (AmbiguousMarker, DanglingReference, DuplicateId, InvalidBundle, NoMarker,
                      NotFound, ParseError, load_bundle, lookup_lexeme, make_template, marker_for,
                      parse_bundle, serialize_bundle, validate_bundle)
from statekit.lexicon import load_seed, seed_names

MINI = """bundle\tlanguage=xx\tname=mini
[FEATURES]
name=SG
name=PL
name=COL
name=SING
[PARADIGMS]
id=countability\tmembers=COL,SING\tkind=inner-intrinsic\tunmarked=SING
id=number\tmembers=SG,PL\tkind=outer-intrinsic\tunmarked=SG
[MARKERS]
paradigm=countability\trealizes=+COL\tform=0
paradigm=countability\trealizes=+SING\tform=a
paradigm=number\trealizes=+SG\tform=0\tposition=suffix
paradigm=number\trealizes=+PL\tform=en\tposition=suffix
[COGSETS]
id=c\tcategory=N\tparadigms=countability,number\tunmarked=+SING,-COL,+SG,-PL\tstate=countability
[LEXEMES]
id=x\tradical=kat\tcogset=c
[CONTEXTS]
id=OBJ
id=GEN
[STATERULES]
contexts=GEN\tcogsets=c\tassign=+COL,-SING
[PHONRULES]
"""


def test_seed_riffian_loads_with_countability_markers(rif):
    forms = sorted(m.form for m in rif.markers_of("countability"))
    assert forms == ["", "a", "i", "t-a", "t-i", "t-∅"]
    assert validate_bundle(rif) == []


@pytest.mark.parametrize("name", ["rif", "fr", "en", "de", "el", "he", "tl", "wo"])
def test_every_seed_validates(name):
    assert validate_bundle(load_seed(name)) == []


def test_seed_names_complete():
    assert {"rif", "fr", "en", "de", "el", "he"} <= set(seed_names())


def test_empty_stream():
    with pytest.raises(ParseError) as exc:
        load_bundle(io.StringIO(""))
    assert exc.value.line == 1 and exc.value.reason == "missing header"


def test_unknown_cogset_is_dangling():
    bad = MINI.replace("cogset=c", "cogset=nope")
    with pytest.raises(DanglingReference) as exc:
        load_bundle(bad)
    assert exc.value.section == "LEXEMES" and exc.value.ident == "nope"


def test_duplicate_lexeme():
    bad = MINI.replace("id=x\tradical=kat\tcogset=c", "id=x\tradical=kat\tcogset=c\nid=x\tradical=kot\tcogset=c")
    with pytest.raises(DuplicateId):
        load_bundle(bad)


@pytest.mark.parametrize("mutation, line", [
    (lambda s: s.replace("[MARKERS]", "[MARKER]"), 10),
    (lambda s: s.replace("id=OBJ", "id=OBJ\tcolour=red"), 20),
    (lambda s: s.replace("id=x\tradical=kat\tcogset=c", "radical=kat\tcogset=c"), 18),
    (lambda s: s.replace("[FEATURES]\n", ""), 2),
    (lambda s: s.replace("realizes=+COL", "realizes=COL"), 11),
])
def test_parse_errors_carry_line(mutation, line):
    with pytest.raises(ParseError) as exc:
        parse_bundle(mutation(MINI))
    assert exc.value.line == line


def test_comments_and_blank_lines_ignored():
    text = "# leading comment\n\n" + MINI.replace("[LEXEMES]\n", "[LEXEMES]\n# a comment\n\n")
    assert load_bundle(text).lexeme_index["x"].radical == "kat"


def test_text_is_nfc_normalized():
    decomposed = unicodedata.normalize("NFD", "âme")
    b = load_bundle(MINI.replace("radical=kat", f"radical={decomposed}"))
    assert b.lexeme_index["x"].radical == "âme"


def test_lookup(rif, fr):
    q = lookup_lexeme(rif, "qzin")
    assert q.radical == "qzin" and q.gloss == "dog"
    assert lookup_lexeme(fr, "voiture").radical == "voiture"
    with pytest.raises(NotFound):
        lookup_lexeme(rif, "zzz")


def test_marker_for_examples(rif):
    assert marker_for(rif, "countability", make_template("N", "+SING,+SG,+M")).form == "a"
    m = marker_for(rif, "countability", make_template("N", "+SING,+PL,-M,+F"))
    assert m.form == "t-i" and m.position == "prefix"
    with pytest.raises(NoMarker):
        marker_for(rif, "countability", make_template("N", "+COL,+PL"))


def test_marker_for_ambiguity_detected():
    b = load_bundle(MINI, validate=False)
    b2 = parse_bundle(MINI.replace("paradigm=countability\trealizes=+SING\tform=a",
                                   "paradigm=countability\trealizes=+SING\tform=a\n"
                                   "paradigm=countability\trealizes=+SING\tform=o"))
    codes = [d.code for d in validate_bundle(b2)]
    assert "AmbiguousMarker" in codes
    with pytest.raises(AmbiguousMarker):
        marker_for(b2, "countability", make_template("N", "+SING"))
    assert validate_bundle(b) == []


def test_incomplete_unmarked_diagnostic():
    bad = MINI.replace("unmarked=+SING,-COL,+SG,-PL", "unmarked=+SING,-COL,+SG")
    diags = validate_bundle(parse_bundle(bad))
    assert [d.code for d in diags] == ["IncompleteUnmarked"]
    assert diags[0].section == "COGSETS" and diags[0].id == "c"
    with pytest.raises(InvalidBundle):
        load_bundle(bad)


def test_state_scope_diagnostic():
    bad = MINI.replace("assign=+COL,-SING", "assign=+COL,-SING,+PL")
    assert "StateScope" in [d.code for d in validate_bundle(parse_bundle(bad))]


def test_conserved_pull_scope_diagnostic():
    bad = MINI.replace("cogset=c", "cogset=c\tconserve=number:COL")
    assert "ConservedPullScope" in [d.code for d in validate_bundle(parse_bundle(bad))]


def test_overlapping_state_rules():
    bad = MINI.replace("[PHONRULES]", "contexts=GEN\tcogsets=c\tassign=+COL,-SING\n[PHONRULES]")
    assert "OverlappingStateRules" in [d.code for d in validate_bundle(parse_bundle(bad))]


def test_round_trip_mini():
    b = load_bundle(MINI)
    assert load_bundle(serialize_bundle(b)) == b


@pytest.mark.parametrize("name", ["rif", "fr", "en", "de", "el", "he", "tl", "wo"])
def test_round_trip_seeds(name):
    b = load_seed(name)
    again = load_bundle(serialize_bundle(b))
    assert again == b
    assert serialize_bundle(again) == serialize_bundle(b)


def test_circumfix_marker():
    text = MINI.replace("paradigm=number\trealizes=+PL\tform=en\tposition=suffix",
                        "paradigm=number\trealizes=+PL\tform=t..t\tposition=circumfix")
    m = marker_for(load_bundle(text), "number", make_template("N", "+PL"))
    assert (m.pre, m.post, m.formed) == ("t", "t", True)


def test_unformed_marker():
    m = marker_for(load_bundle(MINI), "countability", make_template("N", "+COL"))
    assert not m.formed and m.form == "" and str(m) == "∅"
