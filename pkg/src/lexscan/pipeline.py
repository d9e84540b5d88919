"""Run a fixed sequence of extractors over one document."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import dates, entities, legal, quantities, segmentation, tokens
from .document import Annotation, Document, Kind, annotate
from .lexicons import Lexicon, default_lexicon, load_lexicon, merge

SEGMENT_KINDS = (Kind.SENTENCE, Kind.PARAGRAPH, Kind.SECTION, Kind.PAGE, Kind.TITLE, Kind.TOKEN)
# spans claimed by these extractors are not reported again as bare amounts
AMOUNT_CONSUMERS = (Kind.MONEY, Kind.PERCENT, Kind.RATIO, Kind.DISTANCE, Kind.DURATION, Kind.DATE, Kind.CITATION,
                    Kind.REGULATION, Kind.COPYRIGHT, Kind.ADDRESS, Kind.PII, Kind.URL)


@dataclass(frozen=True)
class Resources:
    lexicon: Lexicon
    date_model: dates.DateFilterModel
    sentence_model: segmentation.SentenceModel
    allow_partial_dates: bool = False


def load_resources(locales: Iterable[str] = ("en",), lexicon_paths: Iterable[str] = (),
                   model_paths: dict[str, str] | None = None, allow_partial_dates: bool = False) -> Resources:
    locales = tuple(locales)
    lex = default_lexicon(locales)
    for path in lexicon_paths:
        lex = merge(lex, load_lexicon(path, enabled_locales=locales))
    model_paths = model_paths or {}
    date_model = (dates.DateFilterModel.load(model_paths["date"]) if "date" in model_paths
                  else dates.default_date_model())
    sentence_model = (segmentation.SentenceModel.load(model_paths["sentence"]) if "sentence" in model_paths
                      else segmentation.default_sentence_model())
    return Resources(lex, date_model, sentence_model, allow_partial_dates)


MODEL_KINDS = ("date", "sentence")


def _spans(kind: Kind, fn) -> Callable[[Document, Resources], list[Annotation]]:
    return lambda doc, res: [annotate(doc, kind, s.start, s.end) for s in fn(doc)]


def _tokens(doc: Document, res: Resources) -> list[Annotation]:
    return [annotate(doc, Kind.TOKEN, t.span.start, t.span.end, {"lower": t.lower}) for t in tokens.tokenize(doc)]


EXTRACTORS: dict[Kind, Callable[[Document, Resources], list[Annotation]]] = {
    Kind.SENTENCE: lambda doc, res: segmentation.get_sentences(doc, res.sentence_model),
    Kind.PARAGRAPH: _spans(Kind.PARAGRAPH, segmentation.get_paragraph_spans),
    Kind.SECTION: _spans(Kind.SECTION, segmentation.get_section_spans),
    Kind.PAGE: _spans(Kind.PAGE, segmentation.get_page_spans),
    Kind.TITLE: lambda doc, res: segmentation.get_title_spans(doc),
    Kind.TOKEN: _tokens,
    Kind.MONEY: lambda doc, res: quantities.get_money(doc),
    Kind.PERCENT: lambda doc, res: quantities.get_percents(doc),
    Kind.RATIO: lambda doc, res: quantities.get_ratios(doc),
    Kind.DISTANCE: lambda doc, res: quantities.get_distances(doc),
    Kind.DURATION: lambda doc, res: quantities.get_durations(doc),
    Kind.DATE: lambda doc, res: dates.get_dates(doc, res.date_model, res.allow_partial_dates),
    Kind.CITATION: lambda doc, res: legal.get_citations(doc, res.lexicon),
    Kind.REGULATION: lambda doc, res: legal.get_regulations(doc, res.lexicon),
    Kind.COURT: lambda doc, res: legal.get_courts(doc, res.lexicon),
    Kind.DEFINITION: lambda doc, res: legal.get_definitions(doc),
    Kind.CONDITION: lambda doc, res: legal.get_conditions(doc),
    Kind.CONSTRAINT: lambda doc, res: legal.get_constraints(doc),
    Kind.COPYRIGHT: lambda doc, res: legal.get_copyrights(doc),
    Kind.TRADEMARK: lambda doc, res: legal.get_trademarks(doc),
    Kind.COMPANY: lambda doc, res: entities.get_companies(doc, res.lexicon),
    Kind.GEOENTITY: lambda doc, res: entities.get_geoentities(doc, res.lexicon),
    Kind.ADDRESS: lambda doc, res: entities.get_addresses(doc, res.lexicon),
    Kind.PII: lambda doc, res: entities.get_pii(doc),
    Kind.URL: lambda doc, res: entities.get_urls(doc),
}


def run_document(doc: Document, resources: Resources, kinds: Iterable[Kind] = tuple(Kind)) -> list[Annotation]:
    """Annotations grouped by kind in the fixed ``Kind`` order, span-ordered within a kind."""
    wanted = set(kinds)
    done: dict[Kind, list[Annotation]] = {}

    def get(kind: Kind) -> list[Annotation]:
        if kind not in done:
            if kind is Kind.AMOUNT:
                consumed = [a for k in AMOUNT_CONSUMERS for a in get(k)]
                done[kind] = quantities.get_amounts(doc, exclude=consumed)
            else:
                done[kind] = EXTRACTORS[kind](doc, resources)
        return done[kind]

    out = []
    for kind in Kind:
        if kind in wanted:
            out.extend(sorted(get(kind), key=lambda a: (a.start, a.end)))
    return out


@dataclass
class RunConfig:
    inputs: list[str]
    kinds: tuple[Kind, ...] = tuple(Kind)
    locales: tuple[str, ...] = ("en",)
    lexicon_paths: list[str] = field(default_factory=list)
    model_paths: dict[str, str] = field(default_factory=dict)
    out: str | None = None
    jobs: int = 1
    allow_partial_dates: bool = False

    def __post_init__(self):
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")
        unknown = set(self.model_paths) - set(MODEL_KINDS)
        if unknown:
            raise ValueError(f"unknown model kind(s) {sorted(unknown)}; supported: {', '.join(MODEL_KINDS)}")
