"""The five stages as text-to-text functions over the on-disk artifacts.

Running the whole chain goes through exactly the same serialized
artifacts as running each stage by hand, so both produce identical bytes.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache

from .classifier import CNNClassifier, RuleClassifier, cluster_by_room, format_labels, load_model, parse_labels
from .config import PipelineConfig
from .errors import FormatMismatch, PlacementFailure, T2PError
from .extractor import build_dcg, complete_rooms, dump_dcg, dump_rooms, extract_relations, extract_rooms, load_dcg, load_rooms
from .generator import generate_document, size_for_seed
from .layout import FloorPlan, dump_plan, layout_plan, load_plan
from .render import StyleConfig, render
from .summarizer import SummaryRequest, format_scores_tsv, summarize_sentences
from .text_corpus import CorpusStats, Lexicon, Sentence, build_corpus_stats, split_sentences, tokenize

log = logging.getLogger("text2plan.pipeline")

STAGES = ("summarize", "classify", "extract", "layout", "render")
REFERENCE_DOCS = 200


@lru_cache(maxsize=1)
def reference_stats() -> CorpusStats:
    """Corpus statistics of the built-in synthetic reference corpus."""
    docs = [split_sentences(generate_document(i, size_for_seed(i)).text) for i in range(REFERENCE_DOCS)]
    return build_corpus_stats(docs)


@dataclass
class StageError(Exception):
    """A pipeline error plus whatever artifacts were finished before it."""

    stage: str
    error: Exception
    artifacts: dict[str, str] = field(default_factory=dict)

    def __str__(self):
        return f"{self.stage}: {self.error}"


# -- artifact readers --------------------------------------------------------


def _looks_like_markup(text: str) -> bool:
    head = text.lstrip()[:100].lower()
    return head.startswith("<?xml") or head.startswith("<svg")


def _json_or_none(text: str):
    try:
        return json.loads(text)
    except ValueError:
        return None


def sniff(text: str) -> str:
    """Best guess at which artifact ``text`` is."""
    if _looks_like_markup(text):
        return "svg"
    data = _json_or_none(text)
    if isinstance(data, list):
        return "rooms"
    if isinstance(data, dict):
        if "rooms" in data and "doors" in data:
            return "plan"
        if "nodes" in data and "edges" in data:
            return "dcg"
        return "json"
    if data is not None:
        return "json"
    try:
        if text.strip() and parse_labels(text):
            return "labels"
    except ValueError:
        pass
    return "text"


def expect(text: str, kind: str, what: str) -> None:
    got = sniff(text)
    # a summary is plain text as far as sniffing can tell
    if got != ("text" if kind == "summary" else kind):
        raise FormatMismatch(f"expected {what}, got something that looks like {got}")


def summary_lines(sentences) -> str:
    return "".join(" ".join(s.raw.split()) + "\n" for s in sentences)


def read_summary(text: str, lexicon: Lexicon | None = None) -> list[Sentence]:
    """One sentence per non-blank line, re-indexed from 0."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    return [Sentence(i, ln, tuple(tokenize(ln, lexicon))) for i, ln in enumerate(lines)]


# -- stages ------------------------------------------------------------------


def stage_summarize(
    text: str,
    cfg: PipelineConfig,
    stats: CorpusStats | None = None,
    lexicon: Lexicon | None = None,
) -> dict[str, str]:
    """Raw description -> ``summary.txt`` and ``scores.tsv``."""
    if _looks_like_markup(text) or _json_or_none(text) is not None:
        raise FormatMismatch("expected a plain-text description")
    sentences = split_sentences(text, lexicon)
    request = SummaryRequest(cfg.reduction_ratio, cfg.centrality_mode)
    summary = summarize_sentences(sentences, stats or reference_stats(), request, lexicon=lexicon)
    return {"summary.txt": summary_lines(summary.sentences), "scores.tsv": format_scores_tsv(summary.graph)}


def stage_classify(summary_txt: str, classifier, lexicon: Lexicon | None = None) -> dict[str, str]:
    """``summary.txt`` -> ``labels.tsv``."""
    expect(summary_txt, "summary", "summary.txt (one sentence per line)")
    sentences = read_summary(summary_txt, lexicon)
    return {"labels.tsv": format_labels([classifier.classify(s) for s in sentences])}


def stage_extract(summary_txt: str, labels_tsv: str, strict: bool = False, lexicon: Lexicon | None = None) -> dict[str, str]:
    """``summary.txt`` + ``labels.tsv`` -> ``rooms.json`` and ``dcg.json``."""
    expect(summary_txt, "summary", "summary.txt (one sentence per line)")
    try:
        labels = parse_labels(labels_tsv)
    except ValueError as e:
        raise FormatMismatch(f"expected labels.tsv: {e}") from None
    sentences = read_summary(summary_txt, lexicon)
    if {lab.sentence_index for lab in labels} != {s.index for s in sentences}:
        raise FormatMismatch("labels.tsv does not cover exactly the lines of summary.txt")
    clusters = cluster_by_room(labels, sentences, strict=strict)
    rooms = extract_rooms(clusters.rooms, lexicon, strict=strict)
    relations = extract_relations(clusters.relations, lexicon)
    rooms = complete_rooms(rooms, relations)
    dcg = build_dcg(rooms, relations)
    return {"rooms.json": dump_rooms(rooms), "dcg.json": dump_dcg(dcg)}


def stage_layout(rooms_json: str, dcg_json: str, seed: int = 0, strict: bool = False) -> dict[str, str]:
    """``rooms.json`` + ``dcg.json`` -> ``plan.json``."""
    expect(rooms_json, "rooms", "rooms.json (a JSON array of room records)")
    expect(dcg_json, "dcg", "dcg.json (an object with nodes and edges)")
    rooms = load_rooms(rooms_json)
    for r in rooms:
        r.validate()
    plan = layout_plan(rooms, load_dcg(dcg_json), seed=seed, strict=strict)
    return {"plan.json": dump_plan(plan)}


def stage_render(plan_json: str, style: StyleConfig = StyleConfig()) -> dict[str, str]:
    """``plan.json`` -> ``plan.svg``."""
    expect(plan_json, "plan", "plan.json (an object with rooms and doors)")
    return {"plan.svg": render(load_plan(plan_json), style)}


# -- whole chain -------------------------------------------------------------


def make_classifier(cfg: PipelineConfig, lexicon: Lexicon | None = None):
    if cfg.classifier_mode == "cnn":
        if cfg.model is None:
            raise T2PError("the cnn classifier needs --model")
        return load_model(cfg.model)
    return RuleClassifier(lexicon)


def scoring_stats(classifier) -> CorpusStats:
    if isinstance(classifier, CNNClassifier) and classifier.stats is not None:
        return classifier.stats
    return reference_stats()


def run_pipeline(text: str, cfg: PipelineConfig, classifier=None, lexicon: Lexicon | None = None) -> dict[str, str]:
    """All artifacts by file name; on failure raises :class:`StageError`."""
    done: dict[str, str] = {}

    def run(stage, fn, *args):
        try:
            out = fn(*args)
        except PlacementFailure as e:
            if e.partial_plan is not None:
                done["plan.json"] = dump_plan(e.partial_plan)
            raise StageError(stage, e, done) from e
        except (T2PError, ValueError, KeyError) as e:
            raise StageError(stage, e, done) from e
        done.update(out)
        return out

    if classifier is None:
        try:
            classifier = make_classifier(cfg, lexicon)
        except (T2PError, OSError, ValueError) as e:
            raise StageError("classify", e, done) from e
    run("summarize", stage_summarize, text, cfg, scoring_stats(classifier), lexicon)
    run("classify", stage_classify, done["summary.txt"], classifier, lexicon)
    run("extract", stage_extract, done["summary.txt"], done["labels.tsv"], cfg.strict, lexicon)
    run("layout", stage_layout, done["rooms.json"], done["dcg.json"], cfg.seed, cfg.strict)
    run("render", stage_render, done["plan.json"], cfg.style)
    return done


def plan_from_text(text: str, cfg: PipelineConfig = PipelineConfig(), classifier=None) -> FloorPlan:
    return load_plan(run_pipeline(text, cfg, classifier)["plan.json"])
