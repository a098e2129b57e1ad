"""Spec files, named examples, random corpora, reports and the command line."""

from .corpus import generate_corpus
from .examples import build_example
from .report import RunReport
from .specfile import format_spec, load_spec, parse_spec

__all__ = [
    "generate_corpus",
    "build_example",
    "RunReport",
    "format_spec",
    "load_spec",
    "parse_spec",
]
