"""Gazetteer loading, merging and longest-match scanning."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .document import Annotation, Document, Kind, annotate

ENTITY_KINDS = (
    "court",
    "reporter",
    "geoentity",
    "company_suffix",
    "street_suffix",
    "state_code",
    "stopword",
    "agency",
)

# entity kinds that surface directly as annotation kinds
_ANNOTATION_KIND = {"court": Kind.COURT, "geoentity": Kind.GEOENTITY}

CSV_HEADER = ["entity_kind", "canonical", "aliases", "locale", "attributes"]


class LexiconParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class LexiconSchemaError(LexiconParseError):
    pass


def data_dir() -> Path:
    override = os.environ.get("LEXSCAN_DATA")
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


@dataclass(frozen=True)
class LexiconEntry:
    canonical: str
    aliases: tuple[str, ...]
    entity_kind: str
    locale: str = "en"
    attributes: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if not self.canonical:
            raise LexiconSchemaError("canonical must be non-empty")
        if self.entity_kind not in ENTITY_KINDS:
            raise LexiconSchemaError(f"unknown entity_kind {self.entity_kind!r}")
        cleaned = []
        for alias in self.aliases:
            if alias and alias != self.canonical and alias not in cleaned:
                cleaned.append(alias)
        object.__setattr__(self, "aliases", tuple(cleaned))

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.canonical, self.locale, self.entity_kind)

    @property
    def attrs(self) -> dict[str, str]:
        return dict(self.attributes)

    def patterns(self) -> list[str]:
        return [self.canonical, *self.aliases]


def _merge_entries(entries: Iterable[LexiconEntry]) -> tuple[LexiconEntry, ...]:
    merged: dict[tuple[str, str, str], LexiconEntry] = {}
    for e in entries:
        old = merged.get(e.key)
        if old is None:
            merged[e.key] = e
            continue
        aliases = list(old.aliases) + [a for a in e.aliases if a not in old.aliases]
        attrs = dict(old.attributes)
        for k, v in e.attributes:
            attrs.setdefault(k, v)
        merged[e.key] = LexiconEntry(old.canonical, tuple(aliases), old.entity_kind, old.locale,
                                     tuple(sorted(attrs.items())))
    return tuple(merged.values())


def is_exact_case(alias: str) -> bool:
    """Acronym-like aliases ("US", "S.D.N.Y.") only match with identical case."""
    letters = [c for c in alias if c.isalpha()]
    if not letters:
        return True
    if "." in alias:
        return True
    return len(letters) >= 2 and all(c.isupper() for c in letters) and len(alias.split()) == 1


class _Trie:
    __slots__ = ("children", "entries")

    def __init__(self):
        self.children: dict[str, _Trie] = {}
        self.entries: list[LexiconEntry] = []

    def add(self, chars: Iterable[str], entry: LexiconEntry):
        node = self
        for c in chars:
            node = node.children.setdefault(c, _Trie())
        if entry not in node.entries:
            node.entries.append(entry)


def _is_word_char(c: str) -> bool:
    return c.isalnum()


@dataclass(frozen=True)
class Lexicon:
    entries: tuple[LexiconEntry, ...] = ()
    enabled_locales: frozenset[str] = frozenset({"en"})
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", _merge_entries(self.entries))
        object.__setattr__(self, "enabled_locales", frozenset(self.enabled_locales))
        object.__setattr__(self, "_index", {})

    def __len__(self):
        return len(self.entries)

    def with_locales(self, locales: Iterable[str]) -> Lexicon:
        return Lexicon(self.entries, frozenset(locales))

    def only(self, *entity_kinds: str) -> Lexicon:
        return Lexicon(tuple(e for e in self.entries if e.entity_kind in entity_kinds), self.enabled_locales)

    def kinds(self) -> list[str]:
        return sorted({e.entity_kind for e in self.entries})

    def _tries(self, entity_kind: str) -> tuple[_Trie, _Trie]:
        cached = self._index.get(entity_kind)
        if cached is not None:
            return cached
        exact, folded = _Trie(), _Trie()
        for e in self.entries:
            if e.entity_kind != entity_kind or e.locale not in self.enabled_locales:
                continue
            for p in e.patterns():
                if is_exact_case(p):
                    exact.add(p, e)
                else:
                    folded.add("".join(c.lower() for c in p), e)
        self._index[entity_kind] = (exact, folded)
        return exact, folded

    def match_kind(self, text: str, entity_kind: str) -> list[tuple[int, int, list[LexiconEntry]]]:
        """Greedy left-to-right longest matches of one entity kind.

        Returns ``(start, end, entries)`` triples; ``entries`` holds every
        entry sharing the matched pattern.
        """
        exact, folded = self._tries(entity_kind)
        if not exact.children and not folded.children:
            return []
        out = []
        n = len(text)
        i = 0
        while i < n:
            if i > 0 and _is_word_char(text[i - 1]):
                i += 1
                continue
            best = self._longest_at(text, i, exact, folded)
            if best is None:
                i += 1
                continue
            out.append((i, best[0], best[1]))
            i = best[0]
        return out

    @staticmethod
    def _longest_at(text: str, i: int, exact: _Trie, folded: _Trie):
        n = len(text)
        best = None
        node = exact
        j = i
        while j < n:
            node = node.children.get(text[j])
            if node is None:
                break
            j += 1
            if node.entries and (j == n or not _is_word_char(text[j])):
                best = (j, node.entries)
        node = folded
        j = i
        while j < n and node is not None:
            lowered = text[j].lower()
            for c in lowered:
                node = node.children.get(c)
                if node is None:
                    break
            if node is None:
                break
            j += 1
            if node.entries and (j == n or not _is_word_char(text[j])):
                if best is None or j > best[0]:
                    best = (j, node.entries)
        return best


def _pick_entry(entries: list[LexiconEntry], doc_locale: str) -> LexiconEntry:
    return sorted(entries, key=lambda e: (e.locale != doc_locale, e.locale, e.canonical))[0]


def scan(lex: Lexicon, doc: Document, entity_kinds: Iterable[str] | None = None) -> list[Annotation]:
    """Dictionary-match ``doc`` against ``lex``.

    Longest match wins within an entity kind; matches of different kinds may
    overlap and are all reported.
    """
    kinds = sorted(set(entity_kinds) if entity_kinds is not None else set(lex.kinds()))
    out = []
    for ek in kinds:
        ann_kind = _ANNOTATION_KIND.get(ek)
        for start, end, entries in lex.match_kind(doc.text, ek):
            entry = _pick_entry(entries, doc.locale)
            value = {
                "canonical": entry.canonical,
                "entity_kind": entry.entity_kind,
                "locale": entry.locale,
            }
            if ann_kind is None:
                # non-annotation kinds (reporters, suffixes, ...) surface as lexicon hits
                value["kind"] = ek
            if entry.attributes:
                value["attributes"] = dict(entry.attributes)
            out.append(annotate(doc, ann_kind or _hit_kind(ek), start, end, value))
    return sorted(out, key=lambda a: (a.span.start, a.span.end, a.kind.value))


def _hit_kind(entity_kind: str) -> Kind:
    return {
        "reporter": Kind.CITATION,
        "company_suffix": Kind.COMPANY,
        "street_suffix": Kind.ADDRESS,
        "state_code": Kind.REGULATION,
        "agency": Kind.GEOENTITY,
        "stopword": Kind.TOKEN,
    }[entity_kind]


def merge(a: Lexicon, b: Lexicon) -> Lexicon:
    return Lexicon(a.entries + b.entries, a.enabled_locales | b.enabled_locales)


def _split(field_value: str) -> list[str]:
    return [x.strip() for x in field_value.split(";") if x.strip()]


def _parse_attributes(raw: str, line: int) -> tuple[tuple[str, str], ...]:
    out = []
    for item in _split(raw):
        if "=" not in item:
            raise LexiconParseError(f"attribute {item!r} is not key=value", line)
        k, v = item.split("=", 1)
        out.append((k.strip(), v.strip()))
    return tuple(sorted(out))


def _entry_from_fields(kind: str, canonical: str, aliases, locale: str, attributes, line: int) -> LexiconEntry:
    kind = (kind or "").strip()
    if kind not in ENTITY_KINDS:
        raise LexiconSchemaError(f"unknown entity_kind {kind!r}", line)
    canonical = (canonical or "").strip()
    if not canonical:
        raise LexiconParseError("empty canonical", line)
    if isinstance(aliases, str):
        aliases = _split(aliases)
    if isinstance(attributes, str):
        attributes = _parse_attributes(attributes, line)
    elif isinstance(attributes, dict):
        attributes = tuple(sorted((str(k), str(v)) for k, v in attributes.items()))
    return LexiconEntry(canonical, tuple(aliases or ()), kind, (locale or "en").strip() or "en",
                        tuple(attributes or ()))


def parse_csv(text: str) -> list[LexiconEntry]:
    rows = csv.reader(io.StringIO(text))
    entries = []
    header_seen = False
    for line_no, row in enumerate(rows, start=1):
        if not row or (len(row) == 1 and not row[0].strip()) or row[0].startswith("#"):
            continue
        if not header_seen:
            if [c.strip() for c in row] != CSV_HEADER:
                raise LexiconParseError(f"expected header {','.join(CSV_HEADER)}", line_no)
            header_seen = True
            continue
        if len(row) != len(CSV_HEADER):
            raise LexiconParseError(f"expected {len(CSV_HEADER)} fields, got {len(row)}", line_no)
        entries.append(_entry_from_fields(*row, line=line_no))
    return entries


def parse_json(text: str) -> list[LexiconEntry]:
    try:
        data = json.loads(text) if text.strip() else []
    except json.JSONDecodeError as exc:
        raise LexiconParseError(exc.msg, exc.lineno) from exc
    if not isinstance(data, list):
        raise LexiconParseError("expected a JSON array of objects")
    entries = []
    for i, obj in enumerate(data, start=1):
        if not isinstance(obj, dict):
            raise LexiconParseError("expected an object", i)
        entries.append(_entry_from_fields(obj.get("entity_kind"), obj.get("canonical"), obj.get("aliases", []),
                                          obj.get("locale", "en"), obj.get("attributes", {}), line=i))
    return entries


def load_lexicon(path, format: str | None = None, enabled_locales: Iterable[str] = ("en",)) -> Lexicon:
    path = Path(path)
    fmt = format or path.suffix.lstrip(".").lower()
    text = path.read_text(encoding="utf-8")
    if fmt == "csv":
        entries = parse_csv(text)
    elif fmt == "json":
        entries = parse_json(text)
    else:
        raise ValueError(f"unsupported lexicon format {fmt!r}")
    return Lexicon(tuple(entries), frozenset(enabled_locales))


def write_csv(lex: Lexicon) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for e in lex.entries:
        w.writerow([e.entity_kind, e.canonical, ";".join(e.aliases), e.locale,
                    ";".join(f"{k}={v}" for k, v in e.attributes)])
    return buf.getvalue()


_DEFAULT_FILES = ("courts.csv", "reporters.csv", "geoentities.csv", "company_suffixes.csv",
                  "street_suffixes.csv", "state_codes.csv", "stopwords.csv")

_default_cache: dict[tuple, Lexicon] = {}


def default_lexicon(enabled_locales: Iterable[str] = ("en",)) -> Lexicon:
    """The bundled sample lexicons merged into one."""
    locales = frozenset(enabled_locales)
    key = (str(data_dir()), locales)
    if key not in _default_cache:
        entries = []
        base = data_dir() / "lexicons"
        for name in _DEFAULT_FILES:
            p = base / name
            if p.exists():
                entries.extend(parse_csv(p.read_text(encoding="utf-8")))
        _default_cache[key] = Lexicon(tuple(entries), locales)
    return _default_cache[key]
