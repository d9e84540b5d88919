"""Companies, geopolitical entities, street addresses, PII and URLs."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .document import Annotation, Document, Kind, annotate, longest_first
from .lexicons import Lexicon, default_lexicon, scan


@dataclass(frozen=True)
class CompanyValue:
    name: str
    suffix: str


@dataclass(frozen=True)
class AddressValue:
    number: str
    street: str
    suffix: str
    unit: str | None = None
    city: str | None = None
    state: str | None = None
    zip: str | None = None


@dataclass(frozen=True)
class PiiValue:
    pii_kind: str  # ssn | phone
    redacted: str


# companies

_NAME_TOKEN_RE = re.compile(r"(?:[A-Z][\w&'\-.]*|\d+[A-Za-z][\w&'\-]*)")
_RUN_TOKEN_RE = re.compile(r"[^ \t\n]+")
_CONNECTORS = frozenset({"of", "&"})
_LEADING_NOISE = frozenset({"the", "and", "between", "by", "with", "among", "from", "to", "this", "or"})


def _is_name_token(word: str) -> bool:
    return bool(_NAME_TOKEN_RE.fullmatch(word)) and word[-1] not in ",;:"


def _name_tokens(text: str, end: int) -> list[re.Match]:
    """The run of capitalized tokens on the current line ending at ``end``."""
    line_start = text.rfind("\n", 0, end) + 1
    tokens = list(_RUN_TOKEN_RE.finditer(text, line_start, end))
    if not tokens or tokens[-1].end() != end:
        return []
    i = len(tokens) - 1
    first = len(tokens)
    while i >= 0:
        word = tokens[i].group()
        if _is_name_token(word):
            first = i
        elif not (word in _CONNECTORS and first < len(tokens) and i > 0 and _is_name_token(tokens[i - 1].group())):
            break
        i -= 1
    run = tokens[first:]
    while run and run[0].group().lower() in _LEADING_NOISE:
        run.pop(0)
    return run


def get_companies(doc: Document, suffixes: Lexicon | None = None) -> list[Annotation]:
    """Capitalized names closed by a company-type suffix such as "LP" or "Inc."."""
    suffixes = suffixes or default_lexicon()
    text = doc.text
    out = []
    for s_start, s_end, entries in suffixes.match_kind(text, "company_suffix"):
        if not text[s_start].isupper():
            continue
        gap_start = s_start
        while gap_start > 0 and text[gap_start - 1] in " \t":
            gap_start -= 1
        if gap_start > 0 and text[gap_start - 1] == ",":
            gap_start -= 1
        if gap_start == s_start:
            continue
        run = _name_tokens(text, gap_start)
        if not run:
            continue
        name = " ".join(m.group() for m in run)
        suffix = sorted(entries, key=lambda e: e.canonical)[0].canonical
        out.append(annotate(doc, Kind.COMPANY, run[0].start(), s_end, CompanyValue(name, suffix)))
    return longest_first(out)


def get_geoentities(doc: Document, geo: Lexicon | None = None) -> list[Annotation]:
    geo = geo or default_lexicon()
    return scan(geo, doc, ["geoentity"])


# addresses

def _suffix_table(lex: Lexicon) -> dict[str, str]:
    table = {}
    for e in lex.entries:
        if e.entity_kind == "street_suffix":
            for alias in e.patterns():
                table.setdefault(alias.lower().rstrip("."), e.canonical)
    return table


_ADDRESS_NAME = r"(?:[A-Z][\w'\-.]*|\d+(?:st|nd|rd|th|ST|ND|RD|TH))"
_UNIT_RE = re.compile(r",?[ \t]+((?:Suite|Ste\.?|Unit|Apt\.?|Apartment|Floor|Fl\.?|Room|Rm\.?)[ \t]*[\w\-]+|#[ \t]*[\w\-]+)", re.I)
_CITY_STATE_ZIP_RE = re.compile(r",?[ \t]+([A-Z][A-Za-z.]*(?:[ \t]+[A-Z][A-Za-z.]*){0,3}),[ \t]*([A-Z]{2})[ \t]+(\d{5}(?:-\d{4})?)\b")
_address_cache: dict[int, tuple[Lexicon, re.Pattern, dict[str, str]]] = {}


def _address_pattern(lex: Lexicon) -> tuple[re.Pattern, dict[str, str]]:
    key = id(lex)
    cached = _address_cache.get(key)
    if cached is None or cached[0] is not lex:
        table = _suffix_table(lex)
        alternation = "|".join(re.escape(a) for a in sorted(table, key=lambda a: (-len(a), a)))
        pattern = re.compile(
            rf"(?<![\w\-/.,])(\d+[A-Za-z]?)((?:[ \t]+{_ADDRESS_NAME}){{1,4}}?)[ \t]+((?i:{alternation}))(\.?)(?![\w])"
        )
        _address_cache[key] = (lex, pattern, table)
    return _address_cache[key][1:]


def get_addresses(doc: Document, street_suffixes: Lexicon | None = None) -> list[Annotation]:
    """Street lines: a house number, one to four name tokens, a street suffix."""
    street_suffixes = street_suffixes or default_lexicon()
    pattern, table = _address_pattern(street_suffixes)
    text = doc.text
    out = []
    for m in pattern.finditer(text):
        end = m.end()
        unit = city = state = zip_code = None
        um = _UNIT_RE.match(text, end)
        if um:
            unit, end = um.group(1), um.end()
        cm = _CITY_STATE_ZIP_RE.match(text, end)
        if cm:
            city, state, zip_code, end = cm.group(1), cm.group(2), cm.group(3), cm.end()
        value = AddressValue(m.group(1), m.group(2).strip(), table[m.group(3).lower()], unit, city, state, zip_code)
        out.append(annotate(doc, Kind.ADDRESS, m.start(), end, value))
    return longest_first(out)


# PII

SSN_RE = re.compile(r"(?<![\w\-])(?!000|666|9\d\d)\d{3}-(?!00)\d{2}-(?!0000)\d{4}(?![\w\-])")
PHONE_RE = re.compile(r"(?<![\w+\-(])(?:\+1[ .\-]?)?(?:\(\d{3}\)[ ]?|\d{3}[\-. ])\d{3}[\-.]\d{4}(?![\w\-])")


def mask(text: str) -> str:
    return re.sub(r"\d", "X", text)


def get_pii(doc: Document) -> list[Annotation]:
    found = [annotate(doc, Kind.PII, m.start(), m.end(), PiiValue("ssn", mask(m.group())))
             for m in SSN_RE.finditer(doc.text)]
    found += [annotate(doc, Kind.PII, m.start(), m.end(), PiiValue("phone", mask(m.group())))
              for m in PHONE_RE.finditer(doc.text)]
    return longest_first(found)


def redact(doc: Document, annotations: list[Annotation]) -> str:
    """Copy of the text with every annotated span masked; length is preserved."""
    chars = list(doc.text)
    for a in annotations:
        chars[a.start:a.end] = "X" * (a.end - a.start)
    return "".join(chars)


# URLs

_URL_RE = re.compile(r"(?<![\w@./])(?:(?:https?|ftp)://|www\.)[^\s<>\"“”'()\[\]{}]+", re.I)
_URL_TRAILING = ".,;:!?"


def get_urls(doc: Document) -> list[Annotation]:
    out = []
    for m in _URL_RE.finditer(doc.text):
        url = m.group().rstrip(_URL_TRAILING)
        host = re.sub(r"^(?:\w+://)?(?:www\.)?", "", url, flags=re.I)
        if not re.match(r"\w", host):
            continue
        out.append(annotate(doc, Kind.URL, m.start(), m.start() + len(url), url))
    return out
