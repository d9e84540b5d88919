from datetime import date

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lexscan.dates import (FEATURE_NAMES, DateFilterModel, LabelFileError, default_date_model, expand_year,
                           featurize, filter_candidates, get_dates, get_raw_dates, logistic_grad, logistic_loss,
                           parse_date_text, precision, read_labeled_csv, split_labeled, train_date_filter,
                           write_labeled_csv)
from lexscan.document import make_document
from lexscan.lexicons import data_dir

LABELS = data_dir() / "date_filter_labels.csv"


def raw(text, **kw):
    return [c.parsed for c in get_raw_dates(make_document("d", text), **kw)]


def test_raw_grammar_forms(example1):
    assert date(2012, 10, 12) in [c.parsed for c in get_raw_dates(example1)]
    assert raw("2018-01-01") == [date(2018, 1, 1)]
    assert raw("13/13/2020") == []
    assert raw("June 1, 2017 and 1 June 2017 and 06/01/2017") == [date(2017, 6, 1)] * 3
    assert raw("due Feb. 29, 2021") == []
    assert raw("the 5th day of May, 2010") == [date(2010, 5, 5)]
    assert raw("March 2015") == [date(2015, 3, 1)]
    assert raw("3/15/16 and 3/15/85") == [date(2016, 3, 15), date(1985, 3, 15)]


def test_partial_forms_need_flag():
    assert raw("on March 3 and 12/13") == []
    assert raw("on March 3 and 12/13", allow_partial=True) == [date(2000, 3, 3), date(2000, 12, 13)]
    [c] = get_raw_dates("12/13", allow_partial=True)
    assert c.imputed_year


def test_two_digit_year_window():
    assert expand_year("69") == 2069 and expand_year("70") == 1970
    assert expand_year("05", window_start=1950) == 2005 and expand_year("55", window_start=1950) == 1955


@settings(max_examples=300)
@given(st.text(alphabet="0123456789/-. ", max_size=30))
def test_raw_grammar_only_legal_dates(text):
    for c in get_raw_dates(text, allow_partial=True):
        assert isinstance(c.parsed, date)
        assert c.text == text[c.span.start:c.span.end]
        assert c.context_window[c.window_start:c.window_end] == c.text


def test_featurize():
    [c] = get_raw_dates("2018-01-01")
    x = dict(zip(FEATURE_NAMES, featurize(c)))
    assert x["cand_digit"] == pytest.approx(0.8) and x["cand_hyphen"] == pytest.approx(0.2)
    assert x["month_name"] == 0.0 and x["year_bucket"] == 1.0
    [c] = get_raw_dates("October 12, 2012")
    assert dict(zip(FEATURE_NAMES, featurize(c)))["month_name"] == 1.0
    assert all(0.0 <= v <= 1.0 for v in featurize(c))


def test_default_model_on_examples(example1, example2):
    assert [a.value for a in get_dates(example1)] == [date(2012, 10, 12)]
    model = default_date_model()
    assert [a.value for a in get_dates(example1, model.with_threshold(0.0))] == raw(example1.text)
    junk = get_raw_dates(example2, allow_partial=True)
    assert [c.text for c in junk] == ["2.1"]
    assert filter_candidates(junk, model.with_threshold(0.999)) == []


def test_model_validation_and_json():
    model = default_date_model()
    assert DateFilterModel.from_json(model.to_json()) == model
    with pytest.raises(ValueError):
        DateFilterModel((0.0,) * 3)
    with pytest.raises(ValueError):
        DateFilterModel((float("nan"),) * len(FEATURE_NAMES))
    with pytest.raises(ValueError):
        model.with_threshold(1.001)


def small_set():
    texts = ["October 12, 2012", "2018-01-01", "4.2", "3/4", "June 2017"]
    labels = [True, True, False, False, True]
    return [(parse_date_text(t), y) for t, y in zip(texts, labels)]


def test_gradient_matches_central_differences():
    labeled = small_set()
    X = np.vstack([featurize(c) for c, _ in labeled])
    y = np.array([1.0 if l else 0.0 for _, l in labeled])
    rng = np.random.default_rng(0)
    w, b = rng.normal(size=X.shape[1]), 0.3
    gw, gb = logistic_grad(w, b, X, y)
    h = 1e-6
    for i in range(len(w)):
        e = np.zeros_like(w)
        e[i] = h
        fd = (logistic_loss(w + e, b, X, y) - logistic_loss(w - e, b, X, y)) / (2 * h)
        assert fd == pytest.approx(gw[i], rel=1e-6, abs=1e-9)
    fd_b = (logistic_loss(w, b + h, X, y) - logistic_loss(w, b - h, X, y)) / (2 * h)
    assert fd_b == pytest.approx(gb, rel=1e-6)


def test_training_loss_decreases_on_separable_pair():
    labeled = [(parse_date_text("October 12, 2012"), True), (parse_date_text("4.2"), False)]
    history = []
    train_date_filter(labeled, epochs=50, learning_rate=0.5, history=history)
    assert all(b < a for a, b in zip(history, history[1:]))


def test_flipped_labels_negate_weights():
    labeled = small_set()
    flipped = [(c, not y) for c, y in labeled]
    a = train_date_filter(labeled, epochs=200)
    b = train_date_filter(flipped, epochs=200)
    np.testing.assert_allclose(a.weights, -np.array(b.weights), atol=1e-12)
    assert a.bias == pytest.approx(-b.bias, abs=1e-12)


def test_training_errors():
    with pytest.raises(ValueError):
        train_date_filter([])
    with pytest.raises(ValueError):
        train_date_filter([(parse_date_text("2018-01-01"), True)] * 3)
    with pytest.raises(ValueError):
        train_date_filter(small_set(), epochs=0)


def test_training_is_deterministic():
    assert train_date_filter(small_set(), epochs=30) == train_date_filter(small_set(), epochs=30)


def test_labeled_csv_round_trip_and_errors():
    labeled = read_labeled_csv(LABELS.read_text(encoding="utf-8"))
    assert len(labeled) >= 200
    assert {y for _, y in labeled} == {True, False}
    again = read_labeled_csv(write_labeled_csv(labeled))
    assert [(c.text, c.context_window, y) for c, y in again] == [(c.text, c.context_window, y) for c, y in labeled]
    with pytest.raises(LabelFileError) as err:
        read_labeled_csv("text,context,window_start,window_end,label\n2018-01-01,x 2018-01-01,0,10,1\n")
    assert err.value.line == 2
    with pytest.raises(LabelFileError):
        read_labeled_csv("a,b\n")


def test_held_out_precision_beats_raw():
    labeled = read_labeled_csv(LABELS.read_text(encoding="utf-8"))
    train, held = split_labeled(labeled, 0.3, seed=13)
    model = train_date_filter(train)
    truth = {id(c): y for c, y in held}
    kept = filter_candidates([c for c, _ in held], model)
    assert precision([truth[id(c)] for c in kept]) > precision([y for _, y in held])


@settings(max_examples=200)
@given(st.text(alphabet="0123456789/-., JanuryOctbeMMay", max_size=40), st.floats(0.0, 1.0))
def test_filtered_subset_of_raw(text, threshold):
    doc = make_document("d", text)
    model = default_date_model().with_threshold(threshold)
    rawspans = {(c.span.start, c.span.end) for c in get_raw_dates(doc, allow_partial=True)}
    kept = {(a.start, a.end) for a in get_dates(doc, model, allow_partial=True)}
    assert kept <= rawspans
