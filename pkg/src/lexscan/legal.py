"""Citations, regulations, courts, definitions, conditions, constraints,
copyrights and trademarks."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Sequence

from .document import Annotation, Document, Kind, Span, annotate, longest_first
from .lexicons import Lexicon, data_dir, default_lexicon, scan
from .segmentation import get_sentence_spans


@dataclass(frozen=True)
class CitationValue:
    volume: int | None
    reporter: str
    page: int
    year: int | None = None


@dataclass(frozen=True)
class RegulationValue:
    code_name: str
    normalized: str


@dataclass(frozen=True)
class DefinitionValue:
    term: str
    trigger: str  # shall_mean | defined_as | quoted_parenthetical


@dataclass(frozen=True)
class ConstraintMatch:
    trigger: str
    pre_context: str
    post_context: str

    def as_tuple(self) -> tuple[str, str, str]:
        return (self.trigger, self.pre_context, self.post_context)


@dataclass(frozen=True)
class CopyrightValue:
    sign_present: bool
    year: int
    year_end: int | None
    holder: str


@dataclass(frozen=True)
class TrademarkValue:
    mark_text: str
    symbol: str  # R | TM


# citations

YEAR_FIRST_RANGE = (1600, 2100)
_VOLUME_BEFORE_RE = re.compile(r"(?<![\w.,])(\d{1,4})\s+$")
_PAGE_AFTER_RE = re.compile(r"\s+(\d{1,5})(?![\w])")
_CITE_YEAR_RE = re.compile(r"\s*\(([^()\n]{0,40}?)(\d{4})\)")


def get_citations(doc: Document, reporters: Lexicon | None = None) -> list[Annotation]:
    reporters = reporters or default_lexicon()
    text = doc.text
    out = []
    for start, end, entries in reporters.match_kind(text, "reporter"):
        before = _VOLUME_BEFORE_RE.search(text[max(0, start - 8):start])
        after = _PAGE_AFTER_RE.match(text, end)
        if not before or not after:
            continue
        first, page = int(before.group(1)), int(after.group(1))
        if first < 1 or page < 1:
            continue
        cite_start = start - (len(text[max(0, start - 8):start]) - before.start())
        cite_end = after.end()
        volume, year = first, None
        if YEAR_FIRST_RANGE[0] <= first <= YEAR_FIRST_RANGE[1]:
            volume, year = None, first
        else:
            paren = _CITE_YEAR_RE.match(text, cite_end)
            if paren:
                year = int(paren.group(2))
                cite_end = paren.end()
        reporter = sorted(entries, key=lambda e: e.canonical)[0].canonical
        out.append(annotate(doc, Kind.CITATION, cite_start, cite_end, CitationValue(volume, reporter, page, year)))
    return longest_first(out)


# regulations

_USC_RE = re.compile(
    r"(?<![\w.])(\d+)\s*U\.?\s?S\.?\s?C\.?(?:\s?A\.?)?\s*(?:§{1,2}|[Ss]ec(?:tion|s?\.)|[Ss]ections)?\s*(\d+[a-z]?(?:-\d+)?)(?![\w])"
)
_CFR_RE = re.compile(
    r"(?<![\w.])(\d+)\s*C\.?\s?F\.?\s?R\.?\s*(?:§{1,2}|[Pp]arts?|[Ss]ec(?:tion|\.))?\s*(\d+(?:\.\d+)*)(?![\w]|\.\d)"
)
_PUBL_RE = re.compile(r"\bPub(?:lic)?\.?\s*L(?:aw)?\.?\s*(?:No\.?\s*)?(\d+)\s*[-–]\s*(\d+)(?![\w])")
_STATE_SECTION_RE = re.compile(r"\s*(?:§{1,2}\s*)?(\d+(?:[.\-:]\d+)*)(?![\w])")


def normalize_citation(raw: str) -> str:
    """Strip section symbols and periods, single-space the result."""
    s = re.sub(r"(?<=\d)\.(?=\d)", " ", raw)
    s = s.replace("§", " ").replace(".", "")
    return re.sub(r"\s+", " ", s).strip()


def get_regulations(doc: Document, state_codes: Lexicon | None = None) -> list[Annotation]:
    state_codes = state_codes or default_lexicon()
    text = doc.text
    found = []
    for m in _USC_RE.finditer(text):
        found.append((m.start(), m.end(), "United States Code", f"{m.group(1)} USC {m.group(2)}"))
    for m in _CFR_RE.finditer(text):
        found.append((m.start(), m.end(), "Code of Federal Regulations", normalize_citation(f"{m.group(1)} CFR {m.group(2)}")))
    for m in _PUBL_RE.finditer(text):
        found.append((m.start(), m.end(), "Public Law", f"Pub L {m.group(1)}-{m.group(2)}"))
    for start, end, entries in state_codes.match_kind(text, "state_code"):
        m = _STATE_SECTION_RE.match(text, end)
        if not m:
            continue
        code = sorted(entries, key=lambda e: e.canonical)[0].canonical
        found.append((start, m.end(), code, normalize_citation(f"{text[start:end]} {m.group(1)}")))
    anns = [annotate(doc, Kind.REGULATION, s, e, RegulationValue(name, norm)) for s, e, name, norm in found]
    out, seen = [], set()
    for a in longest_first(anns):
        if a.value.normalized in seen:
            continue
        seen.add(a.value.normalized)
        out.append(a)
    return out


def get_courts(doc: Document, courts: Lexicon | None = None) -> list[Annotation]:
    courts = courts or default_lexicon()
    return scan(courts, doc, ["court"])


# definitions

_TERM = r"([^“”\"\n]{1,80})"
_QUOTED_TRIGGER_RE = re.compile(r"[“\"]" + _TERM + r"[”\"]\s*,?\s+(shall\s+mean|is\s+defined\s+as)\b")
_BARE_TRIGGER_RE = re.compile(r"((?:[A-Z][\w'’\-]*\s+){0,5}[A-Z][\w'’\-]*)\s+(shall\s+mean|is\s+defined\s+as)\b")
_PAREN_RE = re.compile(r"\(\s*(?:[Tt]he\s+)?[“\"]" + _TERM + r"[”\"]\s*\)")
_LEADING_ARTICLE_RE = re.compile(r"^(?:The|THE|A|An|Such)\s+")


def _valid_term(term: str) -> bool:
    words = term.split()
    return 1 <= len(words) <= 6 and term[0].isupper()


def _trigger_name(raw: str) -> str:
    return "shall_mean" if raw.lower().startswith("shall") else "defined_as"


def get_definitions(doc: Document) -> list[Annotation]:
    """Defined terms in document order, each term reported once."""
    text = doc.text
    found = []
    for sent in get_sentence_spans(doc):
        for m in _QUOTED_TRIGGER_RE.finditer(text, sent.start, sent.end):
            found.append((m.start(1), m.end(1), _trigger_name(m.group(2))))
        for m in _BARE_TRIGGER_RE.finditer(text, sent.start, sent.end):
            lead = _LEADING_ARTICLE_RE.match(m.group(1))
            start = m.start(1) + (lead.end() if lead else 0)
            found.append((start, m.end(1), _trigger_name(m.group(2))))
        for m in _PAREN_RE.finditer(text, sent.start, sent.end):
            found.append((m.start(1), m.end(1), "quoted_parenthetical"))
    anns = []
    for start, end, trigger in found:
        while start < end and text[start].isspace():
            start += 1
        while end > start and text[end - 1].isspace():
            end -= 1
        term = text[start:end]
        if end > start and _valid_term(term):
            anns.append(annotate(doc, Kind.DEFINITION, start, end, DefinitionValue(term, trigger)))
    out, seen = [], set()
    for a in longest_first(anns):
        if a.text in seen:
            continue
        seen.add(a.text)
        out.append(a)
    return out


# conditions and constraints

# glued legal adverbs whose tail is itself a trigger ("hereafter", "thereafter")
_COMPOUND_PREFIXES = ("here", "there", "where", "herein", "therein")


def load_triggers(path) -> list[str]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    out = []
    for t in data["triggers"]:
        text = " ".join(t["text"].lower().split())
        out.append(text)
        if t.get("negatable"):
            out.append(text + " not")
    return sorted(set(out), key=lambda s: (-len(s), s))


def compile_triggers(triggers: Sequence[str]) -> re.Pattern:
    alternation = "|".join(r"\s+".join(map(re.escape, t.split())) for t in sorted(triggers, key=lambda s: (-len(s), s)))
    left = "|".join([r"(?<![^\W_])"] + [rf"(?<=\b{p})" for p in _COMPOUND_PREFIXES])
    return re.compile(rf"(?:{left})({alternation})(?![^\W_])", re.I)


@lru_cache(maxsize=None)
def _default_pattern(name: str) -> re.Pattern:
    return compile_triggers(load_triggers(data_dir() / f"{name}.json"))


_CONTEXT_STRIP = " \t\r\n\f\v,;:."


def _trigger_search(doc: Document, pattern: re.Pattern, kind: Kind) -> list[Annotation]:
    text = doc.text
    out = []
    for sent in get_sentence_spans(doc):
        matches = list(pattern.finditer(text, sent.start, sent.end))
        for i, m in enumerate(matches):
            pre_from = matches[i - 1].end(1) if i else sent.start
            pre = text[pre_from:m.start(1)]
            post = text[m.end(1):sent.end] if i == len(matches) - 1 else ""
            trigger = " ".join(m.group(1).lower().split())
            value = ConstraintMatch(trigger, pre.lower().strip(_CONTEXT_STRIP), post.lower().strip(_CONTEXT_STRIP))
            out.append(annotate(doc, kind, m.start(1), m.end(1), value))
    return out


def get_conditions(doc: Document, triggers: Sequence[str] | None = None) -> list[Annotation]:
    pattern = compile_triggers(triggers) if triggers is not None else _default_pattern("conditions")
    return _trigger_search(doc, pattern, Kind.CONDITION)


def get_constraints(doc: Document, triggers: Sequence[str] | None = None) -> list[Annotation]:
    """Constraint phrases with their sentence context.

    Each sentence is cut at its triggers: a match takes the text since the
    previous trigger as ``pre_context``; only the last match in a sentence
    receives the remaining text as ``post_context``.
    """
    pattern = compile_triggers(triggers) if triggers is not None else _default_pattern("constraints")
    return _trigger_search(doc, pattern, Kind.CONSTRAINT)


# copyrights and trademarks

_COPYRIGHT_RE = re.compile(
    r"(?:(?P<sign>©|\([Cc]\))\s*(?:(?P<word1>[Cc]opyright|COPYRIGHT)\s*)?"
    r"|(?P<word2>[Cc]opyright|COPYRIGHT)\s*(?P<sign2>©|\([Cc]\))?\s*)"
    r"(?P<year>\d{4})(?:\s*[-–]\s*(?P<year2>\d{4}))?,?[ \t]+"
    r"(?P<holder>[A-Z][\w&'\-.]*(?:,?[ \t]+(?:[A-Z&][\w&'\-.]*|of|and|&))*)"
)
_RIGHTS_RE = re.compile(r",?\s+All\s+Rights\b.*$", re.I)
_RIGHTS_AHEAD_RE = re.compile(r"\s+rights\b", re.I)
_TRAILING_ALL_RE = re.compile(r",?\s+All$")
_ABBREVIATED_ENDINGS = frozenset({"Inc", "Corp", "Co", "Ltd", "Jr", "Sr", "Bros"})


def get_copyrights(doc: Document) -> list[Annotation]:
    out = []
    for m in _COPYRIGHT_RE.finditer(doc.text):
        holder = m.group("holder")
        if _RIGHTS_AHEAD_RE.match(doc.text, m.end("holder")):
            holder = _TRAILING_ALL_RE.sub("", holder)
        holder = _RIGHTS_RE.sub("", holder).rstrip(" ,")
        if holder.endswith(".") and holder.split()[-1][:-1] not in _ABBREVIATED_ENDINGS and holder.count(".") == 1:
            holder = holder[:-1]
        if not holder:
            continue
        end = m.start("holder") + len(holder)
        year2 = int(m.group("year2")) if m.group("year2") else None
        value = CopyrightValue(bool(m.group("sign") or m.group("sign2")), int(m.group("year")), year2, holder)
        out.append(annotate(doc, Kind.COPYRIGHT, m.start(), end, value))
    return longest_first(out)


_TRADEMARK_RE = re.compile(r"(?<![\w])([A-Z][\w&'\-]*(?:[ \t]+[A-Z][\w&'\-]*){0,3}) ?(\((?:R|TM)\)|®|™)")
_TM_SYMBOL = {"(R)": "R", "®": "R", "(TM)": "TM", "™": "TM"}


def get_trademarks(doc: Document) -> list[Annotation]:
    out = []
    for m in _TRADEMARK_RE.finditer(doc.text):
        out.append(annotate(doc, Kind.TRADEMARK, m.start(), m.end(), TrademarkValue(m.group(1), _TM_SYMBOL[m.group(2)])))
    return out
