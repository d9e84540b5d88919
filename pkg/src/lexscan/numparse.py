"""Numerals and English number words as exact decimals."""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal

from .document import Document, Span, longest_first

UNITS = {
    "zero": 0, "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6, "seven": 7, "eight": 8,
    "nine": 9, "ten": 10, "eleven": 11, "twelve": 12, "thirteen": 13, "fourteen": 14, "fifteen": 15,
    "sixteen": 16, "seventeen": 17, "eighteen": 18, "nineteen": 19,
}
TENS = {
    "twenty": 20, "thirty": 30, "forty": 40, "fifty": 50, "sixty": 60, "seventy": 70, "eighty": 80,
    "ninety": 90,
}
SCALES = {"thousand": 10**3, "million": 10**6, "billion": 10**9}
NUMBER_WORDS = frozenset(UNITS) | frozenset(TENS) | frozenset(SCALES) | {"hundred"}

CURRENCY_WORD_RE = (r"(?:dollars?|euros?|pounds\s+sterling|sterling|yen|yuan|renminbi|rupees?"
                    r"|usd|eur|gbp|jpy|cny|rmb|inr)\b")


class NumberParseError(ValueError):
    pass


@dataclass(frozen=True)
class NumberValue:
    value: Decimal
    span: Span
    source_form: str  # numeral | words | mixed


def _tidy(d: Decimal) -> Decimal:
    """Drop a meaningless fractional part produced by scaling (2.035e9 -> 2035000000)."""
    return d.quantize(Decimal(1)) if d == d.to_integral_value() else d.normalize()


# word grammar

def _sub100(words: list[str], i: int) -> tuple[int, int] | None:
    if i >= len(words):
        return None
    w = words[i]
    if w in TENS:
        v = TENS[w]
        if i + 1 < len(words) and words[i + 1] in UNITS and 0 < UNITS[words[i + 1]] < 10:
            return v + UNITS[words[i + 1]], i + 2
        return v, i + 1
    if w in UNITS and w != "zero":
        return UNITS[w], i + 1
    return None


def _group(words: list[str], i: int) -> tuple[int, int] | None:
    first = _sub100(words, i)
    if first is None:
        return None
    v, j = first
    if j < len(words) and words[j] == "hundred":
        v *= 100
        j += 1
        k = j + 1 if j < len(words) and words[j] == "and" else j
        rest = _sub100(words, k)
        if rest is not None:
            v += rest[0]
            j = rest[1]
    return v, j


def parse_words_prefix(words: list[str]) -> tuple[int, int] | None:
    """Greedily parse lowercase number words; returns (value, words consumed)."""
    if not words:
        return None
    if words[0] == "zero":
        return 0, 1
    total = 0
    last_scale = None
    i = 0
    consumed = None
    while True:
        g = _group(words, i)
        if g is None:
            break
        v, j = g
        scale = SCALES.get(words[j]) if j < len(words) else None
        if scale is not None and (last_scale is None or scale < last_scale):
            total += v * scale
            last_scale = scale
            i = j + 1
            consumed = (total, i)
            if i < len(words) and words[i] == "and" and _group(words, i + 1) is not None:
                i += 1
            continue
        total += v
        consumed = (total, j)
        break
    return consumed


_FRACTION_RE = re.compile(r"\s*(?:\band\s+)?(no|\d{1,2})\s*/\s*100\s*$", re.I)


def _split_words(text: str) -> list[str]:
    return [w for w in re.split(r"[\s\-,]+", text.lower()) if w]


def parse_number_words(text: str) -> Decimal:
    """Parse a phrase such as "one thousand and fifty-seven" or
    "THIRTY-SIX THOUSAND TWO-HUNDRED SIXTY-SIX AND 2/100"."""
    fraction = Decimal(0)
    m = _FRACTION_RE.search(text)
    if m:
        n = m.group(1).lower()
        fraction = Decimal(0) if n == "no" else Decimal(int(n)) / Decimal(100)
        text = text[: m.start()]
    words = _split_words(text)
    parsed = parse_words_prefix(words)
    if parsed is None or parsed[1] != len(words):
        raise NumberParseError(f"not a number phrase: {text!r}")
    return Decimal(parsed[0]) + fraction


def render_number_words(n: int) -> str:
    if not isinstance(n, int) or n < 0 or n > 999_999_999:
        raise ValueError("render_number_words supports 0..999,999,999")
    if n == 0:
        return "zero"
    names_units = {v: k for k, v in UNITS.items()}
    names_tens = {v: k for k, v in TENS.items()}

    def below_thousand(x: int) -> list[str]:
        out = []
        if x >= 100:
            out += [names_units[x // 100], "hundred"]
            x %= 100
        if x >= 20:
            t, u = divmod(x, 10)
            out.append(names_tens[t * 10] + (f"-{names_units[u]}" if u else ""))
        elif x:
            out.append(names_units[x])
        return out

    parts = []
    for scale_name, scale in (("million", 10**6), ("thousand", 10**3)):
        if n >= scale:
            parts += below_thousand(n // scale) + [scale_name]
            n %= scale
    parts += below_thousand(n)
    return " ".join(parts)


# scanning

_NUMERAL_RE = re.compile(r"(?<![\w.])(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?(?![\w]|[.,]\d)")
_MIXED_RE = re.compile(r"(?<![\w.])((?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?)\s+(thousand|million|billion)\b", re.I)
_WORD_RE = re.compile(r"[^\W\d_]+")
_BOUND_FRACTION_RE = re.compile(r"\s+and\s+(no|\d{1,2})/100\b", re.I)
_CURRENCY_AHEAD_RE = re.compile(r"\s+" + CURRENCY_WORD_RE, re.I)


def _numeral_value(s: str) -> Decimal:
    return Decimal(s.replace(",", ""))


def _word_numbers(text: str) -> list[NumberValue]:
    toks = [(m.group().lower(), m.start(), m.end()) for m in _WORD_RE.finditer(text)]
    out = []
    i = 0
    while i < len(toks):
        w = toks[i][0]
        if w not in UNITS and w not in TENS:
            i += 1
            continue
        # extend over tokens joined only by spaces or a single hyphen
        j = i + 1
        while j < len(toks) and (toks[j][0] in NUMBER_WORDS or toks[j][0] == "and"):
            gap = text[toks[j - 1][2]:toks[j][1]]
            if not re.fullmatch(r"\s+|\s*-\s*", gap):
                break
            j += 1
        words = [t[0] for t in toks[i:j]]
        parsed = parse_words_prefix(words)
        if parsed is None:
            i += 1
            continue
        value, used = parsed
        start, end = toks[i][1], toks[i + used - 1][2]
        number = Decimal(value)
        m = _BOUND_FRACTION_RE.match(text, end)
        if m:
            n = m.group(1).lower()
            if n == "no" or _CURRENCY_AHEAD_RE.match(text, m.end()):
                number += Decimal(0) if n == "no" else Decimal(int(n)) / Decimal(100)
                end = m.end()
        out.append(NumberValue(number, Span(start, end), "words"))
        i += used
    return out


def find_numbers(doc: Document | str) -> list[NumberValue]:
    text = doc.text if isinstance(doc, Document) else doc
    candidates = [NumberValue(_numeral_value(m.group()), Span(m.start(), m.end()), "numeral")
                  for m in _NUMERAL_RE.finditer(text)]
    for m in _MIXED_RE.finditer(text):
        value = _tidy(_numeral_value(m.group(1)) * SCALES[m.group(2).lower()])
        candidates.append(NumberValue(value, Span(m.start(), m.end()), "mixed"))
    candidates.extend(_word_numbers(text))
    return longest_first(candidates)
