"""Turn English house descriptions into 2D floor plans.

The pipeline runs summarize -> classify -> extract -> layout -> render;
each stage reads and writes a small text artifact.
"""

from .errors import T2PError
from .layout import FloorPlan, layout_plan
from .pipeline import run_pipeline
from .render import render
from .summarizer import summarize
from .text_corpus import split_sentences, tokenize

__version__ = "0.1.0"

__all__ = [
    "FloorPlan",
    "T2PError",
    "layout_plan",
    "render",
    "run_pipeline",
    "split_sentences",
    "summarize",
    "tokenize",
]
