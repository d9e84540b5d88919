import json

import pytest
from hypothesis import given, settings, strategies as st

from lexscan.document import Kind, make_document
from lexscan.lexicons import (Lexicon, LexiconEntry, LexiconParseError, LexiconSchemaError, default_lexicon,
                              is_exact_case, load_lexicon, merge, parse_csv, parse_json, scan, write_csv)

HEADER = "entity_kind,canonical,aliases,locale,attributes\n"


def test_csv_row_without_aliases():
    entries = parse_csv(HEADER + "court,Supreme Court of New York,,en,country=US\n")
    assert len(entries) == 1
    assert entries[0].aliases == ()
    assert entries[0].attrs == {"country": "US"}


def test_duplicate_rows_merge_aliases(tmp_path):
    path = tmp_path / "courts.csv"
    path.write_text(HEADER + "court,Southern District of New York,,en,\n"
                    "court,Southern District of New York,S.D.N.Y.,en,\n", encoding="utf-8")
    lex = load_lexicon(path)
    assert len(lex) == 1
    assert lex.entries[0].aliases == ("S.D.N.Y.",)


def test_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("", encoding="utf-8")
    assert len(load_lexicon(path)) == 0
    assert parse_json("") == []


def test_parse_errors_carry_line_numbers():
    with pytest.raises(LexiconParseError) as err:
        parse_csv(HEADER + "court,A,,en,\ncourt,B,en\n")
    assert err.value.line == 3
    with pytest.raises(LexiconSchemaError):
        parse_csv(HEADER + "planet,Mars,,en,\n")
    with pytest.raises(LexiconParseError):
        parse_csv("kind,name\n")
    with pytest.raises(LexiconParseError):
        parse_json('[{"entity_kind": "court"')


def test_json_and_csv_round_trip():
    lex = Lexicon(tuple(parse_json(json.dumps([
        {"entity_kind": "court", "canonical": "Court of Appeals", "aliases": ["Ct. App."], "attributes": {"level": "state"}},
    ]))))
    again = Lexicon(tuple(parse_csv(write_csv(lex))))
    assert again.entries == lex.entries


def test_acronym_aliases_are_case_sensitive():
    assert is_exact_case("US") and is_exact_case("S.D.N.Y.") and not is_exact_case("Norway")
    lex = Lexicon((LexiconEntry("United States", ("US",), "geoentity", "en"),))
    assert scan(lex, make_document("d", "let us go")) == []
    assert [a.text for a in scan(lex, make_document("d", "the US market"))] == ["US"]


def test_longest_match_and_kinds_reported_separately():
    lex = default_lexicon().only("court", "geoentity")
    anns = scan(lex, make_document("d", "the Supreme Court of New York held"))
    courts = [a for a in anns if a.kind is Kind.COURT]
    geos = [a for a in anns if a.kind is Kind.GEOENTITY]
    assert [a.value["canonical"] for a in courts] == ["Supreme Court of New York"]
    assert [a.text for a in geos] == ["New York"]


def test_locale_filtering():
    doc = make_document("d", "an island in the sea near Island")
    assert [a for a in scan(default_lexicon(("en",)), doc, ["geoentity"])] == []
    hits = scan(default_lexicon(("en", "de")), doc, ["geoentity"])
    assert [(a.text, a.value["canonical"]) for a in hits] == [("island", "Iceland"), ("Island", "Iceland")]


def test_word_boundaries():
    lex = default_lexicon().only("geoentity")
    assert scan(lex, make_document("d", "Norwayish Texasville")) == []
    assert scan(lex, make_document("d", "")) == []


def test_merge_identity_idempotence_union():
    a = Lexicon((LexiconEntry("Norway", ("Norge",), "geoentity", "en"),))
    b = Lexicon((LexiconEntry("Norway", ("Noreg",), "geoentity", "en"),))
    assert merge(a, Lexicon()).entries == a.entries
    assert merge(a, a).entries == a.entries
    assert set(merge(a, b).entries[0].aliases) == {"Norge", "Noreg"}


def test_scan_is_deterministic(example1):
    lex = default_lexicon()
    assert scan(lex, example1) == scan(lex, example1)


# brute-force oracle for the trie matcher

ALPHABET = "ab .Ab"
PATTERNS = ["ab", "a b", "ab.", "b", "AB", "b a b"]


def brute_force(text, patterns):
    def fits(i, p):
        seg = text[i:i + len(p)]
        if len(seg) != len(p):
            return False
        if is_exact_case(p):
            ok = seg == p
        else:
            ok = seg.lower() == p.lower()
        end = i + len(p)
        return ok and (end == len(text) or not text[end].isalnum())

    out, i = [], 0
    while i < len(text):
        if i > 0 and text[i - 1].isalnum():
            i += 1
            continue
        lengths = [len(p) for p in patterns if fits(i, p)]
        if lengths:
            out.append((i, i + max(lengths)))
            i += max(lengths)
        else:
            i += 1
    return out


@settings(max_examples=300)
@given(st.text(alphabet=ALPHABET, max_size=30))
def test_trie_matches_brute_force(text):
    lex = Lexicon(tuple(LexiconEntry(p, (), "stopword", "en") for p in PATTERNS))
    got = [(s, e) for s, e, _ in lex.match_kind(text, "stopword")]
    assert got == brute_force(text, PATTERNS)
