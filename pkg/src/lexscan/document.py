"""Documents, spans and the annotation envelope shared by every extractor."""

from __future__ import annotations

import dataclasses
import datetime
import json
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from typing import Any, Iterable


class Kind(str, Enum):
    # Declaration order is the fixed pipeline order used by the CLI.
    SENTENCE = "sentence"
    PARAGRAPH = "paragraph"
    SECTION = "section"
    PAGE = "page"
    TITLE = "title"
    TOKEN = "token"
    AMOUNT = "amount"
    MONEY = "money"
    PERCENT = "percent"
    RATIO = "ratio"
    DISTANCE = "distance"
    DURATION = "duration"
    DATE = "date"
    CITATION = "citation"
    REGULATION = "regulation"
    COURT = "court"
    DEFINITION = "definition"
    CONDITION = "condition"
    CONSTRAINT = "constraint"
    COPYRIGHT = "copyright"
    TRADEMARK = "trademark"
    COMPANY = "company"
    GEOENTITY = "geoentity"
    ADDRESS = "address"
    PII = "pii"
    URL = "url"


class SpanError(IndexError):
    pass


@dataclass(frozen=True, order=True)
class Span:
    start: int
    end: int

    def __post_init__(self):
        if self.start < 0 or self.end <= self.start:
            raise SpanError(f"invalid span [{self.start}, {self.end})")

    def __len__(self):
        return self.end - self.start

    def overlaps(self, other: Span) -> bool:
        return self.start < other.end and other.start < self.end

    def contains(self, other: Span) -> bool:
        return self.start <= other.start and other.end <= self.end


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    locale: str = "en"

    def __len__(self):
        return len(self.text)


def make_document(id: str, text: str | bytes, locale: str = "en") -> Document:
    """Build a document, storing ``text`` verbatim.

    Bytes are decoded as strict UTF-8; ``UnicodeDecodeError`` propagates.
    Strings carrying lone surrogates are rejected the same way.
    """
    if not id:
        raise ValueError("document id must be non-empty")
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("utf-8")
    else:
        text.encode("utf-8")
    return Document(id=id, text=text, locale=locale)


def slice(doc: Document, span: Span) -> str:
    if span.end > len(doc.text):
        raise SpanError(f"span [{span.start}, {span.end}) out of range for length {len(doc.text)}")
    return doc.text[span.start:span.end]


@dataclass(frozen=True)
class Annotation:
    kind: Kind
    span: Span
    text: str
    value: Any = None
    locale: str = "en"

    @property
    def start(self) -> int:
        return self.span.start

    @property
    def end(self) -> int:
        return self.span.end

    def to_record(self, doc_id: str) -> dict:
        return {
            "doc_id": doc_id,
            "kind": self.kind.value,
            "start": self.span.start,
            "end": self.span.end,
            "text": self.text,
            "value": to_jsonable(self.value),
            "locale": self.locale,
        }


def annotate(doc: Document, kind: Kind, start: int, end: int, value: Any = None) -> Annotation:
    span = Span(start, end)
    return Annotation(kind=kind, span=span, text=slice(doc, span), value=value, locale=doc.locale)


def sort_annotations(annotations: Iterable[Annotation]) -> list[Annotation]:
    return sorted(annotations, key=lambda a: (a.span.start, a.span.end))


def longest_first(items: Iterable, key=lambda x: x.span) -> list:
    """Drop overlapping items, preferring longer spans then earlier starts.

    The survivors come back sorted by (start, end).
    """
    items = list(items)
    ranked = sorted(items, key=lambda x: (-len(key(x)), key(x).start, key(x).end))
    taken: list = []
    taken_spans: list[Span] = []
    for item in ranked:
        span = key(item)
        if any(span.overlaps(other) for other in taken_spans):
            continue
        taken.append(item)
        taken_spans.append(span)
    return sorted(taken, key=lambda x: (key(x).start, key(x).end))


def to_jsonable(value: Any) -> Any:
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, Decimal):
        return str(value)
    if isinstance(value, (datetime.date, datetime.datetime)):
        return value.isoformat()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Span):
        return [value.start, value.end]
    if dataclasses.is_dataclass(value):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_record(annotation: Annotation, doc_id: str) -> str:
    return json.dumps(annotation.to_record(doc_id), ensure_ascii=False, sort_keys=False)
