"""lexscan command line: extract, segment, train, collocations."""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import dates, segmentation, tokens
from .document import Document, Kind, dumps_record, make_document
from .entities import get_pii, redact
from .lexicons import LexiconParseError
from .pipeline import RunConfig, load_resources, run_document

EXIT_OK, EXIT_INPUT, EXIT_CONFIG = 0, 1, 2
SEGMENT_FLAGS = {"sentences": Kind.SENTENCE, "paragraphs": Kind.PARAGRAPH, "sections": Kind.SECTION,
                 "pages": Kind.PAGE, "titles": Kind.TITLE}


class ConfigError(Exception):
    pass


def _err(msg: str):
    print(f"lexscan: {msg}", file=sys.stderr)


def expand_inputs(paths) -> list[Path]:
    """Files as given; directories contribute their regular files in sorted order."""
    out = []
    for p in map(Path, paths):
        if p.is_dir():
            out.extend(sorted(q for q in p.rglob("*") if q.is_file()))
        else:
            out.append(p)
    return out


def read_document(path: Path, locale: str = "en") -> Document:
    return make_document(str(path), path.read_bytes(), locale)


def parse_kinds(raw: str | None) -> tuple[Kind, ...]:
    if not raw:
        return tuple(Kind)
    supported = {k.value: k for k in Kind}
    names = [n.strip() for n in raw.split(",") if n.strip()]
    unknown = [n for n in names if n not in supported]
    if unknown or not names:
        raise ConfigError(f"unknown kind(s) {', '.join(unknown) or raw!r}; supported kinds: {', '.join(supported)}")
    return tuple(k for k in Kind if k.value in names)


def parse_models(items) -> dict[str, str]:
    out = {}
    for item in items or ():
        kind, sep, path = item.partition("=")
        if not sep or not kind or not path:
            raise ConfigError(f"--model expects kind=path, got {item!r}")
        out[kind] = path
    return out


def _open_out(path: str | None):
    if path is None:
        return sys.stdout
    return open(path, "w", encoding="utf-8", newline="\n")


def _load_all(paths: list[Path], locale: str) -> tuple[list[Document | None], int]:
    docs, status = [], EXIT_OK
    for p in paths:
        try:
            docs.append(read_document(p, locale))
        except (OSError, UnicodeError, ValueError) as e:
            _err(f"cannot read {p}: {e}")
            docs.append(None)
            status = EXIT_INPUT
    return docs, status


def cmd_extract(args) -> int:
    try:
        config = RunConfig(inputs=args.inputs, kinds=parse_kinds(args.kinds), locales=tuple(args.locales.split(",")),
                           lexicon_paths=args.lexicon or [], model_paths=parse_models(args.model), out=args.out,
                           jobs=args.jobs, allow_partial_dates=args.allow_partial_dates)
        resources = load_resources(config.locales, config.lexicon_paths, config.model_paths, config.allow_partial_dates)
    except (ConfigError, ValueError, OSError, LexiconParseError) as e:
        _err(str(e))
        return EXIT_CONFIG

    docs, status = _load_all(expand_inputs(config.inputs), config.locales[0])

    def work(doc):
        return None if doc is None else run_document(doc, resources, config.kinds)

    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        results = list(pool.map(work, docs))

    out = _open_out(config.out)
    try:
        for doc, anns in zip(docs, results):
            if doc is None:
                continue
            if args.count:
                out.write(f"{doc.id}\t{len(anns)}\n")
            else:
                for a in anns:
                    out.write(dumps_record(a, doc.id) + "\n")
            if args.redact:
                target = Path(args.redact) / (Path(doc.id).name + ".redacted")
                target.parent.mkdir(parents=True, exist_ok=True)
                target.write_text(redact(doc, get_pii(doc)), encoding="utf-8")
    finally:
        if out is not sys.stdout:
            out.close()
    return status


def cmd_segment(args) -> int:
    kinds = [k for flag, k in SEGMENT_FLAGS.items() if getattr(args, flag)] or [Kind.SENTENCE]
    try:
        models = parse_models(args.model)
        resources = load_resources(model_paths=models)
    except (ConfigError, ValueError, OSError) as e:
        _err(str(e))
        return EXIT_CONFIG
    paths = expand_inputs(args.inputs)
    docs, status = _load_all(paths, "en")
    out = _open_out(args.out)
    try:
        for doc in docs:
            if doc is None:
                continue
            anns = run_document(doc, resources, kinds)
            if not args.count:
                for a in anns:
                    out.write(dumps_record(a, doc.id) + "\n")
                continue
            for kind in kinds:
                n = sum(a.kind is kind for a in anns)
                prefix = f"{doc.id}\t{kind.value}\t" if len(docs) > 1 or len(kinds) > 1 else ""
                out.write(f"{prefix}{n}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return status


def cmd_train(args) -> int:
    if args.target == "sentence_abbrevs":
        docs, status = _load_all(expand_inputs(args.data), "en")
        corpus = [d for d in docs if d is not None]
        if status or not corpus:
            _err("training corpus is empty or unreadable")
            return EXIT_CONFIG
        scores = segmentation.score_abbreviation_candidates(corpus)
        model = segmentation.train_abbreviations(corpus, threshold=args.threshold)
        Path(args.out).write_text(model.to_json() + "\n", encoding="utf-8")
        print(f"scored {len(scores)} candidates; {len(model.abbreviations)} abbreviations -> {args.out}")
        return EXIT_OK

    labeled = []
    for path in args.data:
        try:
            labeled.extend(dates.read_labeled_csv(Path(path).read_text(encoding="utf-8")))
        except dates.LabelFileError as e:
            _err(f"{path}: {e}")
            return EXIT_CONFIG
        except (OSError, UnicodeError) as e:
            _err(f"cannot read {path}: {e}")
            return EXIT_CONFIG
    history: list[float] = []
    try:
        model = dates.train_date_filter(labeled, epochs=args.epochs, learning_rate=args.lr, history=history)
    except ValueError as e:
        _err(str(e))
        return EXIT_CONFIG
    Path(args.out).write_text(model.to_json() + "\n", encoding="utf-8")
    print(f"trained on {len(labeled)} candidates; final loss {history[-1]:.6f} -> {args.out}")
    return EXIT_OK


def cmd_collocations(args) -> int:
    docs, status = _load_all(expand_inputs(args.inputs), "en")
    corpus = [d for d in docs if d is not None]
    try:
        table = tokens.collocations(corpus, n=args.n, top_k=args.top, scoring=args.scoring)
    except ValueError as e:
        _err(str(e))
        return EXIT_CONFIG
    out = _open_out(args.out)
    try:
        out.write(table.to_csv())
    finally:
        if out is not sys.stdout:
            out.close()
    return status


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lexscan", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("extract", help="emit JSONL annotations")
    ex.add_argument("inputs", nargs="+")
    ex.add_argument("--kinds", help="comma-separated kinds (default: all)")
    ex.add_argument("--locales", default="en", help="comma-separated locales; the first is the document locale")
    ex.add_argument("--lexicon", action="append", help="extra lexicon file (csv/json); repeatable")
    ex.add_argument("--model", action="append", help="kind=path, kind in {date, sentence}; repeatable")
    ex.add_argument("--out")
    ex.add_argument("--jobs", type=int, default=1)
    ex.add_argument("--count", action="store_true", help="print per-document record counts instead")
    ex.add_argument("--redact", metavar="DIR", help="write PII-masked copies of the inputs into DIR")
    ex.add_argument("--allow-partial-dates", action="store_true")
    ex.set_defaults(func=cmd_extract)

    seg = sub.add_parser("segment", help="sentence/paragraph/section records")
    seg.add_argument("inputs", nargs="+")
    for flag in SEGMENT_FLAGS:
        seg.add_argument(f"--{flag}", action="store_true")
    seg.add_argument("--count", action="store_true")
    seg.add_argument("--model", action="append")
    seg.add_argument("--out")
    seg.set_defaults(func=cmd_segment)

    tr = sub.add_parser("train", help="train a model")
    tr.add_argument("target", choices=["sentence_abbrevs", "date_filter"])
    tr.add_argument("data", nargs="+")
    tr.add_argument("--out", required=True)
    tr.add_argument("--threshold", type=float, default=0.3)
    tr.add_argument("--epochs", type=int, default=dates.TrainConfig.epochs)
    tr.add_argument("--lr", type=float, default=dates.TrainConfig.learning_rate)
    tr.set_defaults(func=cmd_train)

    co = sub.add_parser("collocations", help="CSV table of top n-grams")
    co.add_argument("inputs", nargs="*")
    co.add_argument("--n", type=int, default=2)
    co.add_argument("--top", type=int, default=100)
    co.add_argument("--scoring", choices=["frequency", "log_likelihood"], default="frequency")
    co.add_argument("--out")
    co.set_defaults(func=cmd_collocations)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
