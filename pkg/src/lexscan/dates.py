"""Date candidates from a permissive grammar, pruned by a character-distribution classifier."""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass
from datetime import date
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .document import Annotation, Document, Kind, Span, annotate, longest_first
from .lexicons import data_dir

FEATURE_SPEC = "chardist-v1"
CONTEXT_CHARS = 20
DEFAULT_YEAR = 2000
CENTURY_WINDOW_START = 1970  # two-digit years map into [1970, 2069]

MONTHS = {
    "january": 1, "february": 2, "march": 3, "april": 4, "may": 5, "june": 6, "july": 7,
    "august": 8, "september": 9, "october": 10, "november": 11, "december": 12,
    "jan": 1, "feb": 2, "mar": 3, "apr": 4, "jun": 6, "jul": 7, "aug": 8, "sep": 9, "sept": 9,
    "oct": 10, "nov": 11, "dec": 12,
}
_MONTH_FORMS = sorted({f for m in MONTHS for f in (m.capitalize(), m.upper())}, key=lambda s: (-len(s), s))
MONTH = r"(?P<month>" + "|".join(_MONTH_FORMS) + r")\.?"
_ORD = r"(?:st|nd|rd|th)?"


@dataclass(frozen=True)
class DateCandidate:
    span: Span
    text: str
    parsed: date
    context_window: str
    window_start: int = 0
    imputed_year: bool = False

    @property
    def window_end(self) -> int:
        return self.window_start + len(self.text)


# grammar

_PATTERNS = [
    # October 12, 2012 / Oct. 12 2012
    ("mdy", re.compile(rf"(?<![\w]){MONTH}[ \t]+(?P<day>\d{{1,2}}){_ORD},?[ \t]+(?P<year>\d{{4}})(?!\d)")),
    # 12 October 2012 / 12th day of October, 2012
    ("dmy", re.compile(rf"(?<![\w])(?P<day>\d{{1,2}}){_ORD}[ \t]+(?:day[ \t]+of[ \t]+)?{MONTH},?[ \t]+(?P<year>\d{{4}})(?!\d)")),
    ("iso", re.compile(r"(?<![\d\-/.])(?P<year>\d{4})-(?P<month>\d{1,2})-(?P<day>\d{1,2})(?![\d\-/]|\.\d)")),
    ("numeric", re.compile(r"(?<![\d\-/.])(?P<month>\d{1,2})(?P<sep>[/\-.])(?P<day>\d{1,2})(?P=sep)(?P<year>\d{4}|\d{2})(?![\d\-/]|\.\d)")),
    ("my", re.compile(rf"(?<![\w]){MONTH},?[ \t]+(?P<year>\d{{4}})(?!\d)")),
]
_PARTIAL_PATTERNS = [
    ("md", re.compile(rf"(?<![\w]){MONTH}[ \t]+(?P<day>\d{{1,2}}){_ORD}(?![\w]|,?[ \t]*\d)")),
    ("md_numeric", re.compile(r"(?<![\d\-/.])(?P<month>\d{1,2})[/.](?P<day>\d{1,2})(?![\d\-/]|[.]\d)")),
]


def expand_year(y: str, window_start: int = CENTURY_WINDOW_START) -> int:
    if len(y) == 4:
        return int(y)
    yy = int(y)
    year = (window_start // 100) * 100 + yy
    return year if year >= window_start else year + 100


def _month_number(raw: str) -> int:
    return int(raw) if raw.isdigit() else MONTHS[raw.lower()]


def _legal(year: int, month: int, day: int) -> date | None:
    try:
        return date(year, month, day)
    except ValueError:
        return None


def get_raw_dates(doc: Document | str, allow_partial: bool = False, default_year: int = DEFAULT_YEAR,
                  window_start: int = CENTURY_WINDOW_START) -> list[DateCandidate]:
    """High-recall date candidates; every one is a legal calendar date."""
    text = doc.text if isinstance(doc, Document) else doc
    patterns = _PATTERNS + (_PARTIAL_PATTERNS if allow_partial else [])
    found = []
    for _, pattern in patterns:
        for m in pattern.finditer(text):
            groups = m.groupdict()
            imputed = groups.get("year") is None
            year = default_year if imputed else expand_year(groups["year"], window_start)
            day = int(groups["day"]) if groups.get("day") else 1
            parsed = _legal(year, _month_number(groups["month"]), day)
            if parsed is None:
                continue
            s, e = m.start(), m.end()
            lo = max(0, s - CONTEXT_CHARS)
            found.append(DateCandidate(Span(s, e), m.group(), parsed, text[lo:e + CONTEXT_CHARS], s - lo, imputed))
    return longest_first(found)


def parse_date_text(text: str) -> DateCandidate:
    """The candidate covering all of ``text`` (partial forms allowed)."""
    for c in get_raw_dates(text, allow_partial=True):
        if c.span.start == 0 and c.span.end == len(text):
            return c
    raise ValueError(f"not a date: {text!r}")


# features

FEATURE_NAMES = tuple(
    [f"cand_{k}" for k in ("digit", "alpha", "space", "punct", "slash", "hyphen", "comma")]
    + [f"ctx_{k}" for k in ("digit", "alpha", "space", "punct", "slash", "hyphen", "comma")]
    + ["length", "month_name", "digit_runs", "year_bucket"]
)
N_FEATURES = len(FEATURE_NAMES)
_MONTH_WORD_RE = re.compile(r"(?<![^\W\d_])(?:" + "|".join(sorted(MONTHS, key=len, reverse=True)) + r")(?![^\W\d_])", re.I)


def _char_fractions(s: str) -> list[float]:
    n = len(s) or 1
    return [
        sum(c.isdigit() for c in s) / n,
        sum(c.isalpha() for c in s) / n,
        sum(c.isspace() for c in s) / n,
        sum(not c.isalnum() and not c.isspace() for c in s) / n,
        s.count("/") / n,
        s.count("-") / n,
        s.count(",") / n,
    ]


def _year_bucket(text: str) -> float:
    years = [int(y) for y in re.findall(r"(?<!\d)\d{4}(?!\d)", text)]
    if years:
        return 1.0 if any(1900 <= y <= 2100 for y in years) else 0.25
    if len(re.findall(r"\d+", text)) >= 3:
        return 0.5
    return 0.0


def featurize_text(text: str, context: str) -> np.ndarray:
    digit_runs = len(re.findall(r"\d+", text))
    feats = _char_fractions(text) + _char_fractions(context) + [
        min(len(text) / 32.0, 1.0),
        1.0 if _MONTH_WORD_RE.search(text) else 0.0,
        min(digit_runs / 3.0, 1.0),
        _year_bucket(text),
    ]
    return np.asarray(feats, dtype=float)


def featurize(candidate: DateCandidate) -> np.ndarray:
    return featurize_text(candidate.text, candidate.context_window)


# model

@dataclass(frozen=True)
class DateFilterModel:
    weights: tuple[float, ...]
    bias: float = 0.0
    threshold: float = 0.5
    feature_spec: str = FEATURE_SPEC

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.weights) != N_FEATURES:
            raise ValueError(f"expected {N_FEATURES} weights, got {len(self.weights)}")
        if not all(math.isfinite(w) for w in self.weights) or not math.isfinite(self.bias):
            raise ValueError("model weights must be finite")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError("threshold must lie in [0, 1]")
        if self.feature_spec != FEATURE_SPEC:
            raise ValueError(f"unsupported feature spec {self.feature_spec!r}")

    def score(self, candidate: DateCandidate) -> float:
        z = float(np.dot(self.weights, featurize(candidate))) + self.bias
        return float(sigmoid(np.asarray(z)))

    def with_threshold(self, threshold: float) -> DateFilterModel:
        return DateFilterModel(self.weights, self.bias, threshold, self.feature_spec)

    def to_json(self) -> str:
        return json.dumps({"feature_spec": self.feature_spec, "weights": list(self.weights),
                           "bias": self.bias, "threshold": self.threshold}, indent=2)

    @classmethod
    def from_json(cls, text: str) -> DateFilterModel:
        data = json.loads(text)
        return cls(tuple(data["weights"]), data["bias"], data.get("threshold", 0.5), data["feature_spec"])

    @classmethod
    def load(cls, path) -> DateFilterModel:
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def sigmoid(z: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def logistic_loss(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray) -> float:
    z = X @ w + b
    return float(np.mean(np.logaddexp(0.0, -(2.0 * y - 1.0) * z)))


def logistic_grad(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, float]:
    r = sigmoid(X @ w + b) - y
    return X.T @ r / len(y), float(np.mean(r))


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 2000
    learning_rate: float = 1.0
    holdout_fraction: float = 0.3
    seed: int = 13


def train_date_filter(labeled: Sequence[tuple[DateCandidate, bool]], epochs: int = 2000,
                      learning_rate: float = 1.0, history: list[float] | None = None) -> DateFilterModel:
    """Full-batch gradient descent on the mean logistic loss from zero weights.

    ``history`` (if given) receives the loss before each epoch and after the last.
    """
    if not labeled:
        raise ValueError("no training examples")
    if epochs < 1:
        raise ValueError("epochs must be >= 1")
    y = np.asarray([1.0 if label else 0.0 for _, label in labeled])
    if y.min() == y.max():
        raise ValueError("training labels must contain both classes")
    X = np.vstack([featurize(c) for c, _ in labeled])
    return _fit(X, y, epochs, learning_rate, history)


def _fit(X: np.ndarray, y: np.ndarray, epochs: int, learning_rate: float, history: list[float] | None) -> DateFilterModel:
    w = np.zeros(X.shape[1])
    b = 0.0
    for _ in range(epochs):
        if history is not None:
            history.append(logistic_loss(w, b, X, y))
        gw, gb = logistic_grad(w, b, X, y)
        w = w - learning_rate * gw
        b = b - learning_rate * gb
    if history is not None:
        history.append(logistic_loss(w, b, X, y))
    return DateFilterModel(tuple(w), b, 0.5)


@lru_cache(maxsize=1)
def default_date_model() -> DateFilterModel:
    return DateFilterModel.load(data_dir() / "models" / "date_filter.json")


def filter_candidates(candidates: Iterable[DateCandidate], model: DateFilterModel) -> list[DateCandidate]:
    return [c for c in candidates if model.score(c) >= model.threshold]


def get_dates(doc: Document, model: DateFilterModel | None = None, allow_partial: bool = False) -> list[Annotation]:
    model = model or default_date_model()
    kept = filter_candidates(get_raw_dates(doc, allow_partial=allow_partial), model)
    return [annotate(doc, Kind.DATE, c.span.start, c.span.end, c.parsed) for c in kept]


# labeled data

LABEL_HEADER = ["text", "context", "window_start", "window_end", "label"]


class LabelFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _parse_label(raw: str, line: int) -> bool:
    v = raw.strip().lower()
    if v in ("1", "true", "yes"):
        return True
    if v in ("0", "false", "no"):
        return False
    raise LabelFileError(f"bad label {raw!r}", line)


def read_labeled_csv(text: str) -> list[tuple[DateCandidate, bool]]:
    """Parse the training CSV; leading ``#`` lines carry provenance and are skipped."""
    lines = text.splitlines(keepends=True)
    skipped = 0
    while skipped < len(lines) and lines[skipped].startswith("#"):
        skipped += 1
    rows = csv.reader(io.StringIO("".join(lines[skipped:])))
    header = next(rows, None)
    if header != LABEL_HEADER:
        raise LabelFileError(f"expected header {','.join(LABEL_HEADER)}", skipped + 1)
    out = []
    for row in rows:
        line = skipped + rows.line_num
        if not row:
            continue
        if len(row) != len(LABEL_HEADER):
            raise LabelFileError(f"expected {len(LABEL_HEADER)} fields, got {len(row)}", line)
        cand_text, context, ws, we, label = row
        try:
            ws_i, we_i = int(ws), int(we)
        except ValueError:
            raise LabelFileError("window offsets must be integers", line) from None
        if context[ws_i:we_i] != cand_text:
            raise LabelFileError("window offsets do not select the candidate text", line)
        try:
            parsed = parse_date_text(cand_text)
        except ValueError as e:
            raise LabelFileError(str(e), line) from None
        cand = DateCandidate(Span(ws_i, we_i), cand_text, parsed.parsed, context, ws_i, parsed.imputed_year)
        out.append((cand, _parse_label(label, line)))
    return out


def write_labeled_csv(labeled: Iterable[tuple[DateCandidate, bool]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(LABEL_HEADER)
    for c, label in labeled:
        w.writerow([c.text, c.context_window, c.window_start, c.window_end, int(bool(label))])
    return buf.getvalue()


def split_labeled(labeled: Sequence, holdout_fraction: float = 0.3, seed: int = 13) -> tuple[list, list]:
    """Deterministic shuffled train/held-out split."""
    import random

    order = list(range(len(labeled)))
    random.Random(seed).shuffle(order)
    n_hold = int(round(len(order) * holdout_fraction))
    held = sorted(order[:n_hold])
    train = sorted(order[n_hold:])
    return [labeled[i] for i in train], [labeled[i] for i in held]


def precision(labels: Sequence[bool]) -> float:
    return sum(labels) / len(labels) if labels else 0.0
