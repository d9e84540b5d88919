"""Sentence, paragraph, section/title and page segmentation."""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .document import Annotation, Document, Kind, Span, annotate

SEED_ABBREVIATIONS = frozenset({
    "u.s.c", "u.s", "s.ct", "cal", "stat", "no", "nos", "v", "vs", "inc", "corp", "ltd", "l.p", "sec",
    "art", "approx", "al", "seq", "rev", "pub.l", "pub", "co", "cir", "supp", "app", "ch", "ann",
    "para", "e.g", "i.e", "a.m", "p.m", "mr", "mrs", "ms", "dr", "jr", "sr", "st", "ave", "fig",
    "id", "n.a", "l.l.c", "etc",
    # state abbreviations used in citations ("Mo. Rev. Stat.")
    "ala", "ariz", "ark", "colo", "conn", "del", "fla", "ill", "ind", "kan", "mass", "mich", "minn",
    "miss", "mo", "mont", "neb", "nev", "okla", "ore", "tenn", "tex", "wash", "wis", "wyo",
})

DEFAULT_SENTENCE_STARTERS = frozenset({
    "the", "this", "that", "these", "those", "a", "an", "in", "if", "it", "its", "such", "each", "any",
    "all", "no", "notwithstanding", "except", "however", "there", "we", "he", "she", "they", "our",
    "upon", "for", "on", "as", "after", "before", "when", "unless", "subject",
})

_CLOSERS = "\"'”’)]}»"
_OPENERS = "\"'“‘([{«"
_TERMINAL_RE = re.compile(r"^(.*?)([.?!]+)([" + re.escape(_CLOSERS) + r"]*)$", re.S)


@dataclass(frozen=True)
class SentenceModel:
    abbreviations: frozenset[str] = SEED_ABBREVIATIONS
    sentence_starters: frozenset[str] = DEFAULT_SENTENCE_STARTERS
    min_abbrev_score: float = 0.3

    def __post_init__(self):
        abbrevs = frozenset(a.lower().rstrip(".") for a in self.abbreviations)
        if any(any(c.isspace() for c in a) or not a for a in abbrevs):
            raise ValueError("abbreviations must be non-empty and contain no whitespace")
        object.__setattr__(self, "abbreviations", abbrevs)
        object.__setattr__(self, "sentence_starters", frozenset(s.lower() for s in self.sentence_starters))

    def with_abbreviations(self, extra: Iterable[str]) -> SentenceModel:
        return SentenceModel(self.abbreviations | frozenset(extra), self.sentence_starters, self.min_abbrev_score)

    def to_json(self) -> str:
        return json.dumps({
            "abbreviations": sorted(self.abbreviations),
            "sentence_starters": sorted(self.sentence_starters),
            "min_abbrev_score": self.min_abbrev_score,
        }, indent=2)

    @classmethod
    def from_json(cls, text: str) -> SentenceModel:
        data = json.loads(text)
        return cls(frozenset(data["abbreviations"]), frozenset(data.get("sentence_starters", ())),
                   float(data.get("min_abbrev_score", 0.3)))

    @classmethod
    def load(cls, path) -> SentenceModel:
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=None)
def default_sentence_model() -> SentenceModel:
    from .lexicons import data_dir

    path = data_dir() / "models" / "sentence_model.json"
    if path.exists():
        return SentenceModel.load(path)
    return SentenceModel()


def _chunks(text: str) -> list[tuple[int, int]]:
    return [(m.start(), m.end()) for m in re.finditer(r"\S+", text)]


def _core(chunk: str) -> str:
    return chunk.lstrip(_OPENERS).lower()


def _starts_lower(chunk: str) -> bool:
    stripped = chunk.lstrip(_OPENERS)
    return bool(stripped) and stripped[0].islower()


def _first_word(chunk: str) -> str:
    m = re.match(r"[^\W_]+", chunk.lstrip(_OPENERS))
    return m.group().lower() if m else ""


def _is_break(text: str, chunks, i: int, model: SentenceModel) -> bool:
    start, end = chunks[i]
    m = _TERMINAL_RE.match(text[start:end])
    if not m:
        return False
    if i + 1 == len(chunks):
        return True
    nxt = text[chunks[i + 1][0]:chunks[i + 1][1]]
    if _starts_lower(nxt):
        return False
    body, punct = m.group(1), m.group(2)
    if punct != ".":
        return True
    key = _core(body)
    abbrevs = model.abbreviations
    is_abbrev = key in abbrevs
    if not is_abbrev and i > 0:
        prev = text[chunks[i - 1][0]:chunks[i - 1][1]]
        if prev.endswith("."):
            is_abbrev = _core(prev[:-1]) + "." + key in abbrevs
    if not is_abbrev and nxt.endswith("."):
        # first half of a spaced abbreviation such as "S. Ct."
        is_abbrev = key + "." + _core(nxt[:-1]) in abbrevs
    if not is_abbrev:
        return True
    word = _first_word(nxt)
    return bool(word) and nxt.lstrip(_OPENERS)[:1].isupper() and word in model.sentence_starters


def get_sentence_spans(doc: Document, model: SentenceModel | None = None) -> list[Span]:
    model = model or default_sentence_model()
    text = doc.text
    chunks = _chunks(text)
    spans = []
    sent_start = None
    for i, (start, end) in enumerate(chunks):
        if sent_start is None:
            sent_start = start
        if _is_break(text, chunks, i, model):
            spans.append(Span(sent_start, end))
            sent_start = None
    if sent_start is not None:
        spans.append(Span(sent_start, chunks[-1][1]))
    return spans


def get_sentences(doc: Document, model: SentenceModel | None = None) -> list[Annotation]:
    return [annotate(doc, Kind.SENTENCE, s.start, s.end) for s in get_sentence_spans(doc, model)]


def get_sentence_list(doc: Document, model: SentenceModel | None = None) -> list[str]:
    return [doc.text[s.start:s.end] for s in get_sentence_spans(doc, model)]


# abbreviation training

def abbreviation_score(count_with_period: int, count_without_period: int, total_period_tokens: int,
                       total_tokens: int, word: str) -> float:
    """Length- and period-weighted log-likelihood that ``word`` is an abbreviation.

    The null hypothesis gives the word the corpus-wide chance of carrying a
    final period; the alternative fixes it at 0.99.
    """
    if total_tokens <= 0 or count_with_period <= 0:
        return 0.0
    p = total_period_tokens / total_tokens
    if not 0.0 < p < 0.99:
        return 0.0
    k, n_without = count_with_period, count_without_period
    null = k * math.log(p) + n_without * math.log(1.0 - p)
    alt = k * math.log(0.99) + n_without * math.log(0.01)
    ll = -2.0 * (null - alt)
    letters = len(word.replace(".", ""))
    f_length = math.exp(-letters)
    f_periods = word.count(".") + 1
    f_penalty = letters ** (-n_without) if letters else 0.0
    return ll * f_length * f_periods * f_penalty


def _candidate_counts(corpus: Sequence[Document]):
    with_period: Counter = Counter()
    without: Counter = Counter()
    total = 0
    for doc in corpus:
        for start, end in _chunks(doc.text):
            chunk = doc.text[start:end].strip(_OPENERS + _CLOSERS + ",;:")
            if not chunk:
                continue
            total += 1
            if chunk.endswith(".") and not chunk.endswith(".."):
                word = chunk[:-1].lower()
                if word and any(c.isalpha() for c in word):
                    with_period[word] += 1
            else:
                word = chunk.rstrip("?!").lower()
                if word:
                    without[word] += 1
    return with_period, without, total


def score_abbreviation_candidates(corpus: Sequence[Document]) -> dict[str, float]:
    with_period, without, total = _candidate_counts(corpus)
    total_period = sum(with_period.values())
    return {
        w: abbreviation_score(c, without[w], total_period, total, w)
        for w, c in sorted(with_period.items())
        if not any(ch.isspace() for ch in w)
    }


def train_abbreviations(corpus: Sequence[Document], threshold: float = 0.3,
                        base: SentenceModel | None = None) -> SentenceModel:
    """Learn period-terminated abbreviations from raw text.

    Learned abbreviations are added to the seed set of ``base`` (the
    shipped legal model by default); nothing is ever removed.
    """
    if not corpus:
        raise ValueError("training corpus must be non-empty")
    base = base or default_sentence_model()
    scores = score_abbreviation_candidates(corpus)
    learned = {w for w, s in scores.items() if s >= threshold}
    return SentenceModel(base.abbreviations | learned, base.sentence_starters,
                         threshold if math.isfinite(threshold) else base.min_abbrev_score)


# paragraphs and pages

def get_paragraph_spans(doc: Document) -> list[Span]:
    text = doc.text
    spans = []
    pos = 0
    for m in re.finditer(r"\n[ \t\r\f\v]*\n(?:[ \t\r\f\v]*\n)*", text):
        _add_trimmed(spans, text, pos, m.start())
        pos = m.end()
    _add_trimmed(spans, text, pos, len(text))
    return spans


def get_page_spans(doc: Document) -> list[Span]:
    text = doc.text
    spans = []
    pos = 0
    for i, c in enumerate(text):
        if c == "\f":
            _add_trimmed(spans, text, pos, i)
            pos = i + 1
    _add_trimmed(spans, text, pos, len(text))
    return spans


def _add_trimmed(spans: list[Span], text: str, start: int, end: int):
    while start < end and text[start].isspace():
        start += 1
    while end > start and text[end - 1].isspace():
        end -= 1
    if end > start:
        spans.append(Span(start, end))


# titles and sections

@dataclass(frozen=True)
class HeadingRule:
    pattern_kind: str
    max_line_length: int = 100

    KINDS = ("all_caps_line", "numbered_heading", "article_section_keyword", "appendix_keyword",
             "roman_numeral_heading")

    def __post_init__(self):
        if self.pattern_kind not in self.KINDS:
            raise ValueError(f"unknown heading rule {self.pattern_kind!r}")
        if self.max_line_length <= 0:
            raise ValueError("max_line_length must be positive")


DEFAULT_HEADING_RULES = tuple(HeadingRule(k) for k in HeadingRule.KINDS)

_SMALL_WORDS = frozenset({"and", "or", "of", "the", "to", "for", "in", "on", "with", "a", "an", "by", "&", "at"})
_KEYWORD_RE = re.compile(r"(?:ARTICLE|Article|SECTION|Section|§)\s+(?:\d+(?:\.\d+)*|[IVXLC]+|[A-Z])\b")
_APPENDIX_RE = re.compile(r"(?:APPENDIX|Appendix|EXHIBIT|Exhibit|SCHEDULE|Schedule|ANNEX|Annex)\s+[A-Z0-9][\w.\-]*")
_NUMBER_RE = re.compile(r"\d+(?:\.\d+)*\.?\s+")
_ROMAN_RE = re.compile(r"[IVXLC]+\.\s+")


def _heading_phrase_end(line: str, pos: int) -> int | None:
    """End offset of a short Title Case phrase starting at ``pos``.

    The phrase must run to the end of the line, or stop at a period
    followed by whitespace (run-in headings such as "4.2.2  Release.").
    """
    m = re.compile(r"[^\s.]+(?:\s+[^\s.]+)*").match(line, pos)
    if not m:
        return None
    words = m.group().split()
    if not words or len(words) > 10 or not words[0][0].isupper():
        return None
    for w in words:
        core = w.strip(",;:()'\"")
        if not core:
            return None
        if core.lower() in _SMALL_WORDS:
            continue
        if not core[0].isupper():
            return None
    end = m.end()
    if end == len(line.rstrip()):
        return len(line.rstrip())
    if line[end:end + 1] == "." and (end + 1 == len(line) or line[end + 1].isspace()):
        return end + 1
    return None


def _title_end(line: str, rule: HeadingRule) -> int | None:
    stripped = line.rstrip()
    fits = len(stripped) <= rule.max_line_length
    kind = rule.pattern_kind
    if kind == "all_caps_line":
        letters = [c for c in stripped if c.isalpha()]
        if fits and len(letters) >= 2 and not any(c.islower() for c in stripped):
            return len(stripped)
    elif kind == "article_section_keyword":
        if fits and _KEYWORD_RE.match(stripped):
            return len(stripped)
    elif kind == "appendix_keyword":
        if fits and _APPENDIX_RE.match(stripped):
            return len(stripped)
    elif kind in ("numbered_heading", "roman_numeral_heading"):
        m = (_NUMBER_RE if kind == "numbered_heading" else _ROMAN_RE).match(line)
        if m:
            end = _heading_phrase_end(line, m.end())
            if end is not None and end <= rule.max_line_length:
                return end
    return None


def get_title_spans(doc: Document, rules: Sequence[HeadingRule] = DEFAULT_HEADING_RULES) -> list[Annotation]:
    out = []
    for m in re.finditer(r"[^\n]+", doc.text):
        raw = m.group()
        indent = len(raw) - len(raw.lstrip())
        line = raw[indent:]
        if not line.strip():
            continue
        ends = [e for e in (_title_end(line, r) for r in rules) if e]
        if ends:
            start = m.start() + indent
            out.append(annotate(doc, Kind.TITLE, start, start + max(ends)))
    return out


def get_section_spans(doc: Document, rules: Sequence[HeadingRule] = DEFAULT_HEADING_RULES) -> list[Span]:
    starts = [t.span.start for t in get_title_spans(doc, rules)]
    bounds = [0] + starts + [len(doc.text)]
    spans: list[Span] = []
    for a, b in zip(bounds, bounds[1:]):
        _add_trimmed(spans, doc.text, a, b)
    return spans
