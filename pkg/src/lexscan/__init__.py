"""Rule-based extraction of structured facts from legal and financial text."""

from .document import Annotation, Document, Kind, Span, make_document, slice
from .pipeline import load_resources, run_document

__all__ = ["Annotation", "Document", "Kind", "Span", "make_document", "slice", "load_resources", "run_document"]
__version__ = "0.1.0"
