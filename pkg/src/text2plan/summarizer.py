"""Extractive summarization over a sentence similarity graph."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .text_corpus import CorpusStats, Lexicon, Sentence, default_lexicon, split_sentences


@dataclass(frozen=True)
class ScoringParams:
    alpha: float = 1.2
    beta: float = 0.5
    gamma: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not 0 <= self.beta <= 1:
            raise ValueError("beta must lie in [0, 1]")


@dataclass(frozen=True)
class SummaryRequest:
    reduction_ratio: float = 0.6
    centrality: str = "degree"  # or "pagerank"
    word_class_filter: bool = True

    def __post_init__(self):
        if not 0 < self.reduction_ratio <= 1:
            raise ValueError("reduction_ratio must lie in (0, 1]")
        if self.centrality not in ("degree", "pagerank"):
            raise ValueError(f"unknown centrality {self.centrality!r}")


@dataclass
class SimilarityGraph:
    nodes: list[int]
    # weights[a, b] for positions a, b in ``nodes``; symmetric, zero diagonal
    weights: np.ndarray

    def edge_weight(self, i: int, j: int) -> float:
        a, b = self.nodes.index(i), self.nodes.index(j)
        if a == b:
            raise KeyError("no self-edges")
        return float(self.weights[a, b])

    def edges(self):
        n = len(self.nodes)
        for a in range(n):
            for b in range(a + 1, n):
                yield self.nodes[a], self.nodes[b], float(self.weights[a, b])


def inverse_doc_weight(token: str, stats: CorpusStats) -> float:
    n = stats.df(token)
    return math.log((stats.doc_count - n + 0.5) / (n + 0.5))


def query_tokens(sentence: Sentence, lexicon: Lexicon | None, word_class_filter: bool) -> tuple[str, ...]:
    """Tokens that act as query terms; ``other``-class words are dropped."""
    if not word_class_filter:
        return sentence.tokens
    lexicon = lexicon or default_lexicon()
    return tuple(t for t in sentence.tokens if lexicon.word_class(t) != "other")


def sentence_similarity(
    d: Sentence,
    q: Sentence | Sequence[str],
    stats: CorpusStats,
    params: ScoringParams = ScoringParams(),
) -> float:
    """Score document-side sentence ``d`` against the query terms of ``q``.

    ``q`` may be a Sentence (all its tokens are query terms) or an explicit
    token sequence, which is how the word-class filter is applied.
    """
    q_terms = q.tokens if isinstance(q, Sentence) else tuple(q)
    if not q_terms:
        return 0.0
    a, b, g = params.alpha, params.beta, params.gamma
    k = a * (1.0 - b + b * len(d.tokens) / stats.avg_sentence_len)
    counts: dict[str, int] = {}
    for tok in d.tokens:
        counts[tok] = counts.get(tok, 0) + 1
    s = 0.0
    for tok in q_terms:
        f = counts.get(tok, 0)
        s += inverse_doc_weight(tok, stats) * (f * (a + 1.0) / (f + k) + g)
    return s


def score_matrix(
    sentences: Sequence[Sentence],
    stats: CorpusStats,
    params: ScoringParams = ScoringParams(),
    *,
    lexicon: Lexicon | None = None,
    word_class_filter: bool = True,
) -> np.ndarray:
    """Directed scores: ``out[i, j]`` has sentence i as document, j as query."""
    vocab: dict[str, int] = {}
    for s in sentences:
        for t in s.tokens:
            vocab.setdefault(t, len(vocab))
    n = len(sentences)
    tf = np.zeros((n, max(1, len(vocab))), dtype=np.int32)
    for i, s in enumerate(sentences):
        for t in s.tokens:
            tf[i, vocab[t]] += 1
    ptr = [0]
    toks: list[int] = []
    for s in sentences:
        toks.extend(vocab[t] for t in query_tokens(s, lexicon, word_class_filter))
        ptr.append(len(toks))
    idf = np.array([inverse_doc_weight(t, stats) for t in vocab] or [0.0])
    lengths = np.array([float(len(s.tokens)) for s in sentences])
    return kernels.bm25_matrix(
        tf,
        np.asarray(ptr, dtype=np.int64),
        np.asarray(toks, dtype=np.int32),
        idf,
        lengths,
        float(stats.avg_sentence_len),
        float(params.alpha),
        float(params.beta),
        float(params.gamma),
    )


def build_similarity_graph(
    sentences: Sequence[Sentence],
    stats: CorpusStats,
    params: ScoringParams = ScoringParams(),
    *,
    lexicon: Lexicon | None = None,
    word_class_filter: bool = True,
) -> SimilarityGraph:
    """Complete graph; edge {i, j} is the mean of both directed scores."""
    if not sentences:
        raise ValueError("need at least one sentence")
    directed = score_matrix(sentences, stats, params, lexicon=lexicon, word_class_filter=word_class_filter)
    weights = (directed + directed.T) / 2.0
    np.fill_diagonal(weights, 0.0)
    return SimilarityGraph([s.index for s in sentences], weights)


def _pagerank(weights: np.ndarray, damping=0.85, iterations=100, tol=1e-8) -> np.ndarray:
    n = weights.shape[0]
    w = np.clip(weights, 0.0, None)
    out_strength = w.sum(axis=1)
    rank = np.full(n, 1.0 / n)
    for _ in range(iterations):
        spread = np.where(out_strength > 0, rank / np.where(out_strength > 0, out_strength, 1.0), 0.0)
        dangling = rank[out_strength == 0].sum()
        new = (1.0 - damping) / n + damping * (w.T @ spread + dangling / n)
        if np.abs(new - rank).sum() < tol:
            rank = new
            break
        rank = new
    return rank


def centrality(graph: SimilarityGraph, mode: str = "degree") -> np.ndarray:
    if mode == "degree":
        return graph.weights.sum(axis=1)
    if mode == "pagerank":
        return _pagerank(graph.weights)
    raise ValueError(f"unknown centrality {mode!r}")


def rank_sentences(graph: SimilarityGraph, mode: str = "degree") -> list[int]:
    """Sentence indices by descending centrality, ties by document order."""
    if not graph.nodes:
        raise ValueError("empty graph")
    scores = centrality(graph, mode)
    order = sorted(range(len(graph.nodes)), key=lambda a: (-scores[a], graph.nodes[a]))
    return [graph.nodes[a] for a in order]


def selection_count(ratio: float, n: int) -> int:
    # rounding guards against 0.3 * 10 == 3.0000000000000004
    return max(1, math.ceil(round(ratio * n, 9)))


@dataclass
class Summary:
    sentences: list[Sentence]
    graph: SimilarityGraph
    ranking: list[int]


def summarize_sentences(
    sentences: Sequence[Sentence],
    stats: CorpusStats,
    request: SummaryRequest = SummaryRequest(),
    params: ScoringParams = ScoringParams(),
    lexicon: Lexicon | None = None,
) -> Summary:
    graph = build_similarity_graph(
        sentences, stats, params, lexicon=lexicon, word_class_filter=request.word_class_filter
    )
    ranking = rank_sentences(graph, request.centrality)
    keep = set(ranking[: selection_count(request.reduction_ratio, len(sentences))])
    return Summary([s for s in sentences if s.index in keep], graph, ranking)


def summarize(
    text: str,
    request: SummaryRequest | float = SummaryRequest(),
    stats: CorpusStats | None = None,
    params: ScoringParams = ScoringParams(),
    lexicon: Lexicon | None = None,
) -> list[Sentence]:
    """Top-ranked sentences of ``text`` in their original order.

    Without ``stats`` the bundled reference corpus statistics are used.
    """
    if not isinstance(request, SummaryRequest):
        request = SummaryRequest(reduction_ratio=float(request))
    sentences = split_sentences(text, lexicon)
    if stats is None:
        from .pipeline import reference_stats

        stats = reference_stats()
    return summarize_sentences(sentences, stats, request, params, lexicon).sentences


def format_scores_tsv(graph: SimilarityGraph) -> str:
    return "".join(f"{i}\t{j}\t{w!r}\n" for i, j, w in graph.edges())
