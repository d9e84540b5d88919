import math
import re

import pytest
from hypothesis import given, strategies as st
from scipy.stats import binom

from lexscan.document import Kind, make_document
from lexscan.segmentation import (SEED_ABBREVIATIONS, HeadingRule, SentenceModel, abbreviation_score,
                                  get_page_spans, get_paragraph_spans, get_section_spans, get_sentence_list,
                                  get_sentence_spans, get_title_spans, train_abbreviations)


def naive_sentence_count(text):
    return len([s for s in re.split(r"(?<=[.?!])\s+", text.strip()) if s])


def test_example3_three_sentences(example3):
    sentences = get_sentence_list(example3)
    assert len(sentences) == 3
    assert sentences[0] == "4.2.2    Release."
    assert sentences[2].startswith("Notwithstanding the foregoing")
    assert naive_sentence_count(example3.text) == 5


def test_simple_sentences():
    assert len(get_sentence_list(make_document("d", "Short. Text."))) == 2
    assert len(get_sentence_list(make_document("d", "Is it? Yes! Done."))) == 3
    assert len(get_sentence_list(make_document("d", "See 42 U.S.C. §§6901 et seq., as amended by SARA."))) == 1
    assert get_sentence_list(make_document("d", "")) == []


def test_abbreviation_before_sentence_starter_still_breaks():
    text = "The buyer is Acme Corp. The seller is Beta Inc. and it agrees."
    assert len(get_sentence_list(make_document("d", text))) == 2


@given(st.text(alphabet="ab .?!\nA", max_size=60))
def test_sentence_spans_partition_nonspace_text(text):
    doc = make_document("d", text)
    spans = get_sentence_spans(doc)
    covered = "".join(text[s.start:s.end] for s in spans)
    assert re.sub(r"\s", "", covered) == re.sub(r"\s", "", text)
    for a, b in zip(spans, spans[1:]):
        assert a.end <= b.start
    for s in spans:
        assert not text[s.start].isspace() and not text[s.end - 1].isspace()


def test_abbreviation_score_matches_binomial_likelihood_ratio():
    k, n_without, total_periods, total = 50, 0, 120, 1000
    p = total_periods / total
    ll = -2 * (binom.logpmf(k, k + n_without, p) - binom.logpmf(k, k + n_without, 0.99))
    expected = ll * math.exp(-4) * 1 * 4 ** 0
    assert abbreviation_score(k, n_without, total_periods, total, "corp") == pytest.approx(expected, rel=1e-12)


def test_training_learns_corp_not_held():
    body = " ".join(f"Widget {i} Corp. shipped parts and the court held firm" for i in range(50)) + " The end."
    model = train_abbreviations([make_document("c", body)], base=SentenceModel(frozenset({"u.s.c"})))
    assert "corp" in model.abbreviations
    assert "held" not in model.abbreviations
    assert "u.s.c" in model.abbreviations


def test_training_threshold_infinity_keeps_seeds(example1, example2, example3):
    model = train_abbreviations([example1, example2, example3], threshold=math.inf)
    assert model.abbreviations == SentenceModel().abbreviations
    learned = train_abbreviations([example1, example2, example3])
    assert "u.s.c" in learned.abbreviations and SEED_ABBREVIATIONS <= learned.abbreviations
    with pytest.raises(ValueError):
        train_abbreviations([])


def test_model_json_round_trip():
    model = SentenceModel().with_abbreviations(["approx"])
    assert SentenceModel.from_json(model.to_json()) == model


def test_paragraphs():
    count = lambda t: len(get_paragraph_spans(make_document("d", t)))
    assert count("a\n\nb") == 2
    assert count("a\nb") == 1
    assert count("a\n\n\nb") == 2
    assert count("  a  \n \n b ") == 2


def test_pages():
    count = lambda t: len(get_page_spans(make_document("d", t)))
    assert count("a\fb") == 2
    assert count("ab") == 1
    assert count("\f") == 0


def test_titles():
    titles = lambda t: [a.text for a in get_title_spans(make_document("d", t))]
    assert titles("EMPLOYMENT AGREEMENT\nThe parties agree.") == ["EMPLOYMENT AGREEMENT"]
    assert titles("VII. Indemnification and Insurance\nText here.") == ["VII. Indemnification and Insurance"]
    assert titles("the parties agree as follows") == []
    assert titles("ARTICLE IV\nSection 4.1 Purchase Price\nAPPENDIX A") == ["ARTICLE IV", "Section 4.1 Purchase Price", "APPENDIX A"]
    with pytest.raises(ValueError):
        HeadingRule("bold_text")


def test_example3_heading_is_one_section(example3):
    titles = get_title_spans(example3)
    assert [a.text for a in titles] == ["4.2.2    Release."]
    assert all(a.kind is Kind.TITLE for a in titles)
    assert len(get_section_spans(example3)) == 1


def test_sections_with_and_without_preamble():
    sections = lambda t: get_section_spans(make_document("d", t))
    assert len(sections("ARTICLE I\nx\nARTICLE II\ny")) == 2
    assert len(sections("Preamble text.\nARTICLE I\nx\nARTICLE II\ny")) == 3
    assert len(sections("just prose here.")) == 1
