"""Tokenization, Porter stemming, stopwords and corpus statistics."""

from __future__ import annotations

import csv
import io
import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .document import Document, Span

_TOKEN_RE = re.compile(
    r"""
    (?:[^\W\d_]\.){2,}                  # U.S.C., e.g.
    | \d+(?:[.,]\d+)*[^\W_]*            # 1,250,000.00  4.2.2  4th
    | [^\W_]+(?:[-'’][^\W_]+)*     # words, hyphenated words
    | \S                                # any other symbol on its own
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    span: Span
    text: str
    lower: str

    def __str__(self):
        return self.text


def tokenize(doc: Document | str) -> list[Token]:
    text = doc.text if isinstance(doc, Document) else doc
    return [Token(Span(m.start(), m.end()), m.group(), m.group().lower()) for m in _TOKEN_RE.finditer(text)]


def is_word(token: Token | str) -> bool:
    s = token.text if isinstance(token, Token) else token
    return any(c.isalnum() for c in s)


def remove_stopwords(tokens: Iterable[Token], stopwords: Iterable[str]) -> list[Token]:
    stops = {s.lower() for s in stopwords}
    return [t for t in tokens if t.lower not in stops]


def default_stopwords() -> frozenset[str]:
    from .lexicons import default_lexicon

    return frozenset(e.canonical.lower() for e in default_lexicon().entries if e.entity_kind == "stopword")


# Porter (1980) suffix stripping

_VOWELS = frozenset("aeiou")


def _is_cons(word: str, i: int) -> bool:
    c = word[i]
    if c in _VOWELS:
        return False
    if c == "y":
        return i == 0 or not _is_cons(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of VC sequences in ``stem``."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        cons = _is_cons(stem, i)
        if cons and prev_vowel:
            m += 1
        prev_vowel = not cons
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_cons(stem, i) for i in range(len(stem)))


def _ends_double_cons(word: str) -> bool:
    return len(word) >= 2 and word[-1] == word[-2] and _is_cons(word, len(word) - 1)


def _ends_cvc(word: str) -> bool:
    if len(word) < 3:
        return False
    return (_is_cons(word, len(word) - 3) and not _is_cons(word, len(word) - 2)
            and _is_cons(word, len(word) - 1) and word[-1] not in "wxy")


def _apply(word: str, rules, condition) -> str:
    # the longest matching suffix decides; a failed condition stops the step
    for suffix, repl in rules:
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            return stem + repl if condition(stem, suffix) else word
    return word


_STEP2 = sorted([
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"), ("izer", "ize"),
    ("abli", "able"), ("alli", "al"), ("entli", "ent"), ("eli", "e"), ("ousli", "ous"),
    ("ization", "ize"), ("ation", "ate"), ("ator", "ate"), ("alism", "al"), ("iveness", "ive"),
    ("fulness", "ful"), ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
], key=lambda r: -len(r[0]))

_STEP3 = sorted([
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"), ("ical", "ic"), ("ful", ""), ("ness", ""),
], key=lambda r: -len(r[0]))

_STEP4 = sorted([(s, "") for s in (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment", "ent", "ion", "ou",
    "ism", "ate", "iti", "ous", "ive", "ize")], key=lambda r: -len(r[0]))


def _step1ab(w: str) -> str:
    if w.endswith("sses"):
        w = w[:-2]
    elif w.endswith("ies"):
        w = w[:-2]
    elif w.endswith("ss"):
        pass
    elif w.endswith("s"):
        w = w[:-1]

    if w.endswith("eed"):
        if _measure(w[:-3]) > 0:
            w = w[:-1]
        return w
    for suffix in ("ed", "ing"):
        if w.endswith(suffix) and _has_vowel(w[: -len(suffix)]):
            w = w[: -len(suffix)]
            if w.endswith(("at", "bl", "iz")):
                return w + "e"
            if _ends_double_cons(w) and w[-1] not in "lsz":
                return w[:-1]
            if _measure(w) == 1 and _ends_cvc(w):
                return w + "e"
            return w
    return w


def stem(token: str) -> str:
    if not token:
        raise ValueError("cannot stem an empty string")
    w = token.lower()
    if len(w) <= 2:
        return w
    w = _step1ab(w)
    if w.endswith("y") and _has_vowel(w[:-1]):
        w = w[:-1] + "i"
    w = _apply(w, _STEP2, lambda s, _: _measure(s) > 0)
    w = _apply(w, _STEP3, lambda s, _: _measure(s) > 0)
    w = _apply(w, _STEP4, lambda s, suf: _measure(s) > 1 and (suf != "ion" or s.endswith(("s", "t"))))
    if w.endswith("e"):
        s = w[:-1]
        m = _measure(s)
        if m > 1 or (m == 1 and not _ends_cvc(s)):
            w = s
    if _measure(w) > 1 and _ends_double_cons(w) and w.endswith("l"):
        w = w[:-1]
    return w


# n-grams and distributions

def ngrams(items: Sequence, n: int) -> list[tuple]:
    if n < 1:
        raise ValueError("n must be >= 1")
    return [tuple(items[i:i + n]) for i in range(len(items) - n + 1)]


def skipgrams(items: Sequence, n: int, k: int) -> list[tuple]:
    """n-grams allowing up to ``k`` skipped positions in total."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    out = []
    for first in range(len(items)):
        rest = range(first + 1, min(len(items), first + n + k))
        for tail in itertools.combinations(rest, n - 1):
            out.append((items[first], *(items[j] for j in tail)))
    return out


def char_distribution(text: str, n: int) -> dict[str, int]:
    if n < 1:
        raise ValueError("n must be >= 1")
    return dict(Counter(text[i:i + n] for i in range(len(text) - n + 1)))


# collocations

@dataclass(frozen=True)
class CollocationTable:
    n: int
    scored: tuple[tuple[tuple[str, ...], int, float], ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rank", "gram", "count", "score"])
        for rank, (gram, count, score) in enumerate(self.scored, start=1):
            w.writerow([rank, " ".join(gram), count, f"{score:.6f}"])
        return buf.getvalue()


def _xlogx_ratio(k: float, expected: float) -> float:
    return 0.0 if k == 0 else k * math.log(k / expected)


def log_likelihood_ratio(k11: int, k12: int, k21: int, k22: int) -> float:
    """Dunning's G^2 for a 2x2 contingency table."""
    n = k11 + k12 + k21 + k22
    if n == 0:
        return 0.0
    r1, r2 = k11 + k12, k21 + k22
    c1, c2 = k11 + k21, k12 + k22
    g = 0.0
    for k, r, c in ((k11, r1, c1), (k12, r1, c2), (k21, r2, c1), (k22, r2, c2)):
        if k:
            g += _xlogx_ratio(k, r * c / n)
    return max(0.0, 2.0 * g)


def _sentence_grams(doc: Document, n: int) -> Counter:
    from .segmentation import default_sentence_model, get_sentence_spans

    grams: Counter = Counter()
    tokens = [t for t in tokenize(doc) if is_word(t)]
    spans = get_sentence_spans(doc, default_sentence_model())
    i = 0
    for sent in spans:
        words = []
        while i < len(tokens) and tokens[i].span.start < sent.end:
            if tokens[i].span.start >= sent.start:
                words.append(tokens[i].lower)
            i += 1
        grams.update(ngrams(words, n))
    return grams


def collocations(corpus: Sequence[Document], n: int = 2, top_k: int = 100,
                 scoring: str = "frequency") -> CollocationTable:
    if not corpus:
        raise ValueError("collocations need a non-empty corpus")
    if n not in (2, 3):
        raise ValueError("only bigrams and trigrams are supported")
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    if scoring not in ("frequency", "log_likelihood"):
        raise ValueError(f"unknown scoring {scoring!r}")

    grams: Counter = Counter()
    for doc in corpus:
        grams.update(_sentence_grams(doc, n))

    if scoring == "frequency":
        scored = [(g, c, float(c)) for g, c in grams.items()]
    else:
        # trigrams are scored as (w1 w2) followed by w3
        total = sum(grams.values())
        heads: Counter = Counter()
        tails: Counter = Counter()
        for g, c in grams.items():
            heads[g[:-1]] += c
            tails[g[-1]] += c
        scored = []
        for g, c in grams.items():
            k11 = c
            k12 = heads[g[:-1]] - c
            k21 = tails[g[-1]] - c
            k22 = total - k11 - k12 - k21
            scored.append((g, c, log_likelihood_ratio(k11, k12, k21, k22)))
    scored.sort(key=lambda r: (-r[2], -r[1], r[0]))
    return CollocationTable(n=n, scored=tuple(scored[:top_k]))
