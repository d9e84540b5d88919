"""Money, amounts, percents, ratios, distances and durations."""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from typing import Iterable

from .document import Annotation, Document, Kind, annotate, longest_first
from .numparse import NumberValue, find_numbers

DEFAULT_CURRENCIES = frozenset({"USD", "EUR", "GBP", "JPY", "CNY", "INR"})

SYMBOLS = {"$": "USD", "€": "EUR", "£": "GBP", "¥": "JPY", "₹": "INR"}
CODES = {"USD": "USD", "EUR": "EUR", "GBP": "GBP", "JPY": "JPY", "CNY": "CNY", "RMB": "CNY", "INR": "INR"}
CURRENCY_WORDS = {
    "dollar": "USD", "dollars": "USD", "euro": "EUR", "euros": "EUR", "pounds sterling": "GBP",
    "pound sterling": "GBP", "sterling": "GBP", "yen": "JPY", "yuan": "CNY", "renminbi": "CNY",
    "rupee": "INR", "rupees": "INR",
}

DAYS_PER_UNIT = {
    "second": Decimal(1) / Decimal(86400),
    "minute": Decimal(1) / Decimal(1440),
    "hour": Decimal(1) / Decimal(24),
    "day": Decimal(1),
    "week": Decimal(7),
    "month": Decimal(30),
    "quarter": Decimal(91),
    "year": Decimal(365),
}

DISTANCE_UNITS = {
    "mile": "mile", "miles": "mile", "mi": "mile",
    "kilometer": "kilometer", "kilometers": "kilometer", "kilometre": "kilometer", "kilometres": "kilometer",
    "km": "kilometer", "kms": "kilometer",
    "meter": "meter", "meters": "meter", "metre": "meter", "metres": "meter", "m": "meter",
    "foot": "foot", "feet": "foot", "ft": "foot",
    "yard": "yard", "yards": "yard", "yd": "yard", "yds": "yard",
    "inch": "inch", "inches": "inch",
}

DURATION_UNITS = {
    "second": "second", "seconds": "second", "sec": "second", "secs": "second",
    "minute": "minute", "minutes": "minute", "min": "minute", "mins": "minute",
    "hour": "hour", "hours": "hour", "hr": "hour", "hrs": "hour",
    "day": "day", "days": "day",
    "week": "week", "weeks": "week",
    "month": "month", "months": "month",
    "quarter": "quarter", "quarters": "quarter",
    "year": "year", "years": "year", "yr": "year", "yrs": "year",
    "anniversary": "year", "anniversaries": "year",
}


@dataclass(frozen=True)
class MoneyValue:
    amount: Decimal
    currency: str


@dataclass(frozen=True)
class AmountValue:
    value: Decimal
    source_form: str
    unit: str | None = None


@dataclass(frozen=True)
class PercentValue:
    magnitude: Decimal
    unit: str
    fraction: Decimal


@dataclass(frozen=True)
class RatioValue:
    left: Decimal
    right: Decimal
    quotient: Decimal


@dataclass(frozen=True)
class QuantityValue:
    value: Decimal
    unit: str
    kind: str
    normalized_days: Decimal | None = None


def _alternation(words: Iterable[str]) -> str:
    return "|".join(re.escape(w).replace(r"\ ", r"\s+") for w in sorted(words, key=len, reverse=True))


_SYMBOL_BEFORE_RE = re.compile(r"(?:(CN|US)\s?)?([$€£¥₹])\s?$")
_CODE_BEFORE_RE = re.compile(r"(?<![\w])(USD|EUR|GBP|JPY|CNY|RMB|INR)\s?$")
_WORD_AFTER_RE = re.compile(r"\s*(" + _alternation(CURRENCY_WORDS) + r")\b", re.I)
_CODE_AFTER_RE = re.compile(r"\s?(USD|EUR|GBP|JPY|CNY|RMB|INR)\b")


def _money_for(doc: Document, n: NumberValue, currencies) -> Annotation | None:
    text = doc.text
    before = text[max(0, n.span.start - 6):n.span.start]
    start, end, currency = n.span.start, n.span.end, None
    m = _SYMBOL_BEFORE_RE.search(before)
    if m:
        symbol, prefix = m.group(2), m.group(1)
        # a CN prefix switches the yen sign to yuan
        currency = "CNY" if symbol == "¥" and prefix == "CN" else SYMBOLS[symbol]
        start = n.span.start - (len(before) - m.start())
    if currency is None:
        m = _CODE_BEFORE_RE.search(before)
        if m:
            currency = CODES[m.group(1)]
            start = n.span.start - (len(before) - m.start())
    if currency is None:
        m = _WORD_AFTER_RE.match(text, n.span.end)
        if m:
            currency = CURRENCY_WORDS[re.sub(r"\s+", " ", m.group(1).lower())]
            end = m.end()
        else:
            m = _CODE_AFTER_RE.match(text, n.span.end)
            if m:
                currency = CODES[m.group(1)]
                end = m.end()
    if currency is None or currency not in currencies:
        return None
    return annotate(doc, Kind.MONEY, start, end, MoneyValue(n.value, currency))


def get_money(doc: Document, currencies: Iterable[str] = DEFAULT_CURRENCIES, dedupe: bool = False) -> list[Annotation]:
    """Monetary amounts in document order.

    A written amount followed by its parenthetical numeral restatement
    yields two annotations unless ``dedupe`` is set.
    """
    currencies = frozenset(currencies)
    found = [a for a in (_money_for(doc, n, currencies) for n in find_numbers(doc)) if a is not None]
    found = longest_first(found)
    if dedupe:
        kept = []
        for a in found:
            if kept:
                prev = kept[-1]
                gap = doc.text[prev.end:a.start]
                if re.fullmatch(r"\s*\(\s*", gap) and prev.value == a.value:
                    continue
            kept.append(a)
        found = kept
    return found


_FUNCTION_WORDS = frozenset({
    "and", "or", "of", "the", "a", "an", "to", "in", "on", "at", "by", "for", "with", "from", "as", "is",
    "are", "was", "be", "that", "which", "than", "per", "each", "such", "any", "no", "not", "nor", "if",
})
_UNIT_WORD_RE = re.compile(r"[ \t]+([^\W\d_]+)\b")


def get_amounts(doc: Document, exclude: Iterable[Annotation] = ()) -> list[Annotation]:
    """Every number in ``doc``; spans overlapping ``exclude`` are dropped."""
    blocked = [a.span for a in exclude]
    out = []
    for n in find_numbers(doc):
        if any(n.span.overlaps(b) for b in blocked):
            continue
        m = _UNIT_WORD_RE.match(doc.text, n.span.end)
        unit = m.group(1) if m and m.group(1).lower() not in _FUNCTION_WORDS else None
        out.append(annotate(doc, Kind.AMOUNT, n.span.start, n.span.end, AmountValue(n.value, n.source_form, unit)))
    return out


_PERCENT_AFTER_RE = re.compile(r"\s?(%)|\s*(percent|per\s+cent|pct)\b|\s*(bps|basis\s+points?)\b", re.I)


def get_percents(doc: Document) -> list[Annotation]:
    out = []
    for n in find_numbers(doc):
        m = _PERCENT_AFTER_RE.match(doc.text, n.span.end)
        if not m:
            continue
        if m.group(3):
            unit, fraction = "bps", n.value / Decimal(10000)
        else:
            unit, fraction = "percent", n.value / Decimal(100)
        out.append(annotate(doc, Kind.PERCENT, n.span.start, m.end(), PercentValue(n.value, unit, fraction)))
    return longest_first(out)


_NUM_RATIO_RE = re.compile(r"(?<![\w.:])(\d+(?:\.\d+)?):(\d+(?:\.\d+)?)(?![\w:]|\.\d)")
_TIME_AFTER_RE = re.compile(r"\s*(?:a\.?m\b\.?|p\.?m\b\.?)", re.I)
_TIME_BEFORE_RE = re.compile(r"\bat\s+$", re.I)
_RANGE_BEFORE_RE = re.compile(r"\b(?:from|between)\s+$", re.I)


def get_ratios(doc: Document) -> list[Annotation]:
    text = doc.text
    out = []
    for m in _NUM_RATIO_RE.finditer(text):
        if _TIME_AFTER_RE.match(text, m.end()) or _TIME_BEFORE_RE.search(text[max(0, m.start() - 8):m.start()]):
            continue
        left, right = Decimal(m.group(1)), Decimal(m.group(2))
        if right == 0:
            continue
        out.append(annotate(doc, Kind.RATIO, m.start(), m.end(), RatioValue(left, right, left / right)))
    words = [n for n in find_numbers(doc) if n.source_form == "words"]
    for a, b in zip(words, words[1:]):
        if not re.fullmatch(r"\s+to\s+", text[a.span.end:b.span.start], re.I):
            continue
        if b.value == 0 or _RANGE_BEFORE_RE.search(text[max(0, a.span.start - 10):a.span.start]):
            continue
        out.append(annotate(doc, Kind.RATIO, a.span.start, b.span.end, RatioValue(a.value, b.value, a.value / b.value)))
    return longest_first(out)


_DISTANCE_RE = re.compile(r"\s*(" + _alternation(DISTANCE_UNITS) + r")\b", re.I)
_DURATION_RE = re.compile(
    r"(\s*\(\s*\d+(?:\.\d+)?\s*\))?\s*(?:(?:calendar|business|consecutive)\s+)?(" + _alternation(DURATION_UNITS) + r")\b",
    re.I,
)


def get_distances(doc: Document) -> list[Annotation]:
    out = []
    for n in find_numbers(doc):
        m = _DISTANCE_RE.match(doc.text, n.span.end)
        if not m:
            continue
        unit = DISTANCE_UNITS[m.group(1).lower()]
        out.append(annotate(doc, Kind.DISTANCE, n.span.start, m.end(), QuantityValue(n.value, unit, "distance")))
    return longest_first(out)


def get_durations(doc: Document) -> list[Annotation]:
    out = []
    for n in find_numbers(doc):
        m = _DURATION_RE.match(doc.text, n.span.end)
        if not m:
            continue
        unit = DURATION_UNITS[m.group(2).lower()]
        days = n.value * DAYS_PER_UNIT[unit]
        out.append(annotate(doc, Kind.DURATION, n.span.start, m.end(), QuantityValue(n.value, unit, "duration", days)))
    return longest_first(out)
