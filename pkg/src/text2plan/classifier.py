"""Per-class binary convolutional sentence classifiers and room clustering.

Each head is a small text CNN: convolutions of widths 3, 4 and 5 over the
word-vector matrix, ReLU, max-pooling over time, dropout, and a dense layer
to two softmax outputs. Everything is plain numpy in float64.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .embeddings import EmbeddingTable, embed_sentence, train_embeddings
from .errors import DegenerateLabels, UnlabeledSentence
from .symbols import LABELS, RELATION, ROOM_TYPES
from .text_corpus import CorpusStats, Lexicon, Sentence, default_lexicon

log = logging.getLogger("text2plan.classify")

MODEL_MAGIC = "T2P-MODEL-v1"
FILTER_SIZES = (3, 4, 5)


@dataclass(frozen=True)
class TrainParams:
    filters_per_size: int = 16
    dropout_rate: float = 0.5
    learning_rate: float = 0.05
    epochs: int = 200
    batch_size: int = 16

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class SentenceLabel:
    sentence_index: int
    room_tags: tuple[str, ...]
    is_relation: bool

    @property
    def labels(self) -> tuple[str, ...]:
        return self.room_tags + ((RELATION,) if self.is_relation else ())


class ConvTextModel:
    """One binary head. ``params`` maps parameter-group name to array."""

    def __init__(self, params: Mapping[str, np.ndarray], dropout_rate: float = 0.5):
        self.params = {k: np.asarray(v, dtype=np.float64) for k, v in params.items()}
        self.dropout_rate = dropout_rate

    filter_sizes = FILTER_SIZES

    @classmethod
    def initialize(cls, dim: int, filters: int = 16, dropout_rate: float = 0.5, seed: int = 0) -> "ConvTextModel":
        rng = np.random.default_rng(seed)
        params = {}
        for k in FILTER_SIZES:
            params[f"conv{k}_w"] = rng.normal(0.0, np.sqrt(2.0 / (k * dim)), size=(k * dim, filters))
            params[f"conv{k}_b"] = np.zeros(filters)
        pooled = filters * len(FILTER_SIZES)
        params["dense_w"] = rng.normal(0.0, np.sqrt(1.0 / pooled), size=(pooled, 2))
        params["dense_b"] = np.zeros(2)
        return cls(params, dropout_rate)

    @property
    def filters_per_size(self) -> int:
        return self.params["conv3_b"].shape[0]

    def _forward(self, x: np.ndarray, mask: np.ndarray | None):
        batch, max_len, dim = x.shape
        pooled, cache = [], []
        for k in FILTER_SIZES:
            positions = max_len - k + 1
            windows = sliding_window_view(x, (k, dim), axis=(1, 2)).reshape(batch * positions, k * dim)
            # 2-D GEMM; a batched 3-D matmul here is an order of magnitude slower
            z = (windows @ self.params[f"conv{k}_w"] + self.params[f"conv{k}_b"]).reshape(batch, positions, -1)
            windows = windows.reshape(batch, positions, k * dim)
            act = np.maximum(z, 0.0)
            arg = act.argmax(axis=1)
            pooled.append(np.take_along_axis(act, arg[:, None, :], axis=1)[:, 0, :])
            cache.append((windows, z, arg))
        h = np.concatenate(pooled, axis=1)
        if mask is not None:
            h = h * mask
        logits = h @ self.params["dense_w"] + self.params["dense_b"]
        logits = logits - logits.max(axis=1, keepdims=True)
        e = np.exp(logits)
        probs = e / e.sum(axis=1, keepdims=True)
        return probs, (h, cache)

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        """Class probabilities ``(batch, 2)``; dropout is off at inference."""
        x = np.asarray(x, dtype=np.float64)
        if x.ndim == 2:
            x = x[None]
        return self._forward(x, None)[0]

    def loss_and_grads(self, x: np.ndarray, y: np.ndarray, mask: np.ndarray | None = None):
        """Mean cross-entropy and its gradient for every parameter group."""
        probs, (h, cache) = self._forward(x, mask)
        batch = x.shape[0]
        loss = -np.mean(np.log(probs[np.arange(batch), y] + 1e-300))
        dlogits = probs.copy()
        dlogits[np.arange(batch), y] -= 1.0
        dlogits /= batch
        grads = {"dense_w": h.T @ dlogits, "dense_b": dlogits.sum(axis=0)}
        dh = dlogits @ self.params["dense_w"].T
        if mask is not None:
            dh = dh * mask
        f = self.filters_per_size
        rows = np.arange(batch)[:, None]
        for slot, (k, (windows, z, arg)) in enumerate(zip(FILTER_SIZES, cache)):
            dpool = dh[:, slot * f : (slot + 1) * f]
            zmax = np.take_along_axis(z, arg[:, None, :], axis=1)[:, 0, :]
            dz = dpool * (zmax > 0)
            picked = windows[rows, arg]  # (batch, filters, k*dim)
            grads[f"conv{k}_w"] = np.einsum("bfi,bf->if", picked, dz)
            grads[f"conv{k}_b"] = dz.sum(axis=0)
        return loss, grads

    def to_json(self) -> dict:
        return {
            "filter_sizes": list(FILTER_SIZES),
            "dropout_rate": self.dropout_rate,
            "params": {k: {"shape": list(v.shape), "data": v.ravel().tolist()} for k, v in sorted(self.params.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ConvTextModel":
        params = {k: np.asarray(v["data"], dtype=np.float64).reshape(v["shape"]) for k, v in data["params"].items()}
        return cls(params, float(data["dropout_rate"]))


@dataclass
class TrainResult:
    model: ConvTextModel
    losses: list[float]
    initial_loss: float


class HeadStack:
    """Several heads trained side by side on the same minibatches.

    Conv filters of all heads are concatenated so each filter width costs a
    single GEMM. Heads share no parameters, so each head's gradient equals
    what :meth:`ConvTextModel.loss_and_grads` gives for it alone.
    """

    def __init__(self, models: Sequence[ConvTextModel], dtype=np.float64):
        self.n_heads = len(models)
        self.filters = models[0].filters_per_size
        self.dtype = dtype
        self.conv_w = {k: np.concatenate([m.params[f"conv{k}_w"] for m in models], axis=1).astype(dtype) for k in FILTER_SIZES}
        self.conv_b = {k: np.concatenate([m.params[f"conv{k}_b"] for m in models]).astype(dtype) for k in FILTER_SIZES}
        self.dense_w = np.stack([m.params["dense_w"] for m in models]).astype(dtype)
        self.dense_b = np.stack([m.params["dense_b"] for m in models]).astype(dtype)
        self.dropout_rate = models[0].dropout_rate

    def _pooled(self, x):
        """Per-head pooled features ``(batch, heads, 3 * filters)``."""
        batch, max_len, dim = x.shape
        h, f = self.n_heads, self.filters
        parts, cache = [], []
        for k in FILTER_SIZES:
            positions = max_len - k + 1
            windows = sliding_window_view(x, (k, dim), axis=(1, 2)).reshape(batch * positions, k * dim)
            z = (windows @ self.conv_w[k] + self.conv_b[k]).reshape(batch, positions, h * f)
            arg = z.argmax(axis=1)
            zmax = np.take_along_axis(z, arg[:, None, :], axis=1)[:, 0, :]
            parts.append(np.maximum(zmax, 0.0).reshape(batch, h, f))
            cache.append((windows.reshape(batch, positions, k * dim), arg, zmax))
        return np.concatenate(parts, axis=2), cache

    def step(self, x, y, mask, lr):
        """One SGD step. ``y`` is ``(batch, heads)``; returns per-head losses."""
        batch = x.shape[0]
        h, f = self.n_heads, self.filters
        feats, cache = self._pooled(x)
        if mask is not None:
            feats = feats * mask
        logits = np.einsum("bhi,hio->bho", feats, self.dense_w) + self.dense_b
        logits = logits - logits.max(axis=2, keepdims=True)
        e = np.exp(logits)
        probs = e / e.sum(axis=2, keepdims=True)
        rows = np.arange(batch)[:, None]
        heads = np.arange(h)[None, :]
        losses = -np.log(probs[rows, heads, y] + 1e-30).mean(axis=0)
        dlogits = probs
        dlogits[rows, heads, y] -= 1.0
        dlogits /= batch
        d_dense_w = np.einsum("bhi,bho->hio", feats, dlogits)
        d_dense_b = dlogits.sum(axis=0)
        dfeat = np.einsum("bho,hio->bhi", dlogits, self.dense_w)
        if mask is not None:
            dfeat = dfeat * mask
        self.dense_w -= lr * d_dense_w
        self.dense_b -= lr * d_dense_b
        for slot, (k, (windows, arg, zmax)) in enumerate(zip(FILTER_SIZES, cache)):
            dz = dfeat[:, :, slot * f : (slot + 1) * f].reshape(batch, h * f) * (zmax > 0)
            picked = windows[rows, arg]
            self.conv_w[k] -= lr * np.einsum("bfi,bf->if", picked, dz)
            self.conv_b[k] -= lr * dz.sum(axis=0)
        return losses

    def loss(self, x, y):
        feats, _ = self._pooled(x.astype(self.dtype))
        logits = np.einsum("bhi,hio->bho", feats, self.dense_w) + self.dense_b
        logits = logits - logits.max(axis=2, keepdims=True)
        logp = logits - np.log(np.exp(logits).sum(axis=2, keepdims=True))
        rows = np.arange(x.shape[0])[:, None]
        return -logp[rows, np.arange(self.n_heads)[None, :], y].mean(axis=0)

    def models(self) -> list[ConvTextModel]:
        f = self.filters
        out = []
        for i in range(self.n_heads):
            params = {}
            for k in FILTER_SIZES:
                params[f"conv{k}_w"] = self.conv_w[k][:, i * f : (i + 1) * f].astype(np.float64)
                params[f"conv{k}_b"] = self.conv_b[k][i * f : (i + 1) * f].astype(np.float64)
            params["dense_w"] = self.dense_w[i].astype(np.float64)
            params["dense_b"] = self.dense_b[i].astype(np.float64)
            out.append(ConvTextModel(params, self.dropout_rate))
        return out


def train_heads(
    x: np.ndarray,
    y: np.ndarray,
    params: TrainParams = TrainParams(),
    seed: int = 0,
    dtype=np.float32,
) -> list[TrainResult]:
    """Minibatch SGD for one head per column of ``y`` (shape ``(n, heads)``).

    Fixed-seed shuffling and dropout masks make the result deterministic.
    """
    y = np.asarray(y, dtype=np.int64)
    if y.ndim == 1:
        y = y[:, None]
    for col in range(y.shape[1]):
        if len(np.unique(y[:, col])) < 2:
            raise DegenerateLabels(f"head {col}: training set needs both positive and negative examples")
    if x.shape[1] < max(FILTER_SIZES):
        raise ValueError(f"max_len must be at least {max(FILTER_SIZES)}")
    rng = np.random.default_rng(seed)
    heads = y.shape[1]
    init = [
        ConvTextModel.initialize(x.shape[2], params.filters_per_size, params.dropout_rate, seed=int(rng.integers(2**31)))
        for _ in range(heads)
    ]
    stack = HeadStack(init, dtype)
    xs = np.ascontiguousarray(x, dtype=dtype)
    initial = stack.loss(xs, y)
    keep = 1.0 - params.dropout_rate
    width = params.filters_per_size * len(FILTER_SIZES)
    history = []
    n = len(y)
    for _ in range(params.epochs):
        order = rng.permutation(n)
        total = np.zeros(heads)
        for start in range(0, n, params.batch_size):
            idx = order[start : start + params.batch_size]
            mask = None
            if params.dropout_rate > 0:
                mask = ((rng.random((len(idx), heads, width)) < keep) / keep).astype(dtype)
            total += stack.step(xs[idx], y[idx], mask, params.learning_rate) * len(idx)
        history.append(total / n)
    return [
        TrainResult(model, [float(h[i]) for h in history], float(initial[i]))
        for i, model in enumerate(stack.models())
    ]


def train_binary(
    x: np.ndarray,
    y: np.ndarray,
    params: TrainParams = TrainParams(),
    seed: int = 0,
    dtype=np.float32,
) -> TrainResult:
    """Train a single binary head. ``x`` is ``(n, max_len, dim)``."""
    y = np.asarray(y, dtype=np.int64)
    if len(np.unique(y)) < 2:
        raise DegenerateLabels("training set needs both positive and negative examples")
    return train_heads(x, y[:, None], params, seed, dtype)[0]


# -- classifiers -------------------------------------------------------------


class RuleClassifier:
    """Keyword classifier: a room word tags its room; a connective plus at
    least two room mentions marks a relation."""

    def __init__(self, lexicon: Lexicon | None = None):
        self.lexicon = lexicon or default_lexicon()

    def classify(self, sentence: Sentence) -> SentenceLabel:
        rooms = [self.lexicon.room_type(t) for t in sentence.tokens]
        rooms = [r for r in rooms if r]
        tags = tuple(t for t in ROOM_TYPES if t in rooms)
        relation = len(rooms) >= 2 and any(t in self.lexicon.connectives for t in sentence.tokens)
        return SentenceLabel(sentence.index, tags, relation)


@dataclass
class CNNClassifier:
    table: EmbeddingTable
    heads: dict[str, ConvTextModel]
    max_len: int = 18
    threshold: float = 0.5
    train_params: TrainParams = field(default_factory=TrainParams)
    stats: CorpusStats | None = None
    seed: int = 0

    def matrix(self, tokens: Sequence[str]) -> np.ndarray:
        return embed_sentence(tokens, self.table, self.max_len)

    def probabilities(self, sentence: Sentence) -> dict[str, float]:
        x = self.matrix(sentence.tokens)
        return {label: float(head.predict_proba(x)[0, 1]) for label, head in self.heads.items()}

    def classify(self, sentence: Sentence) -> SentenceLabel:
        probs = self.probabilities(sentence)
        tags = tuple(t for t in ROOM_TYPES if probs.get(t, 0.0) >= self.threshold)
        return SentenceLabel(sentence.index, tags, probs.get(RELATION, 0.0) >= self.threshold)

    def to_json(self) -> dict:
        return {
            "version": 1,
            "seed": self.seed,
            "max_len": self.max_len,
            "threshold": self.threshold,
            "train_params": self.train_params.to_json(),
            "embedding": self.table.to_json(),
            "heads": {k: v.to_json() for k, v in self.heads.items()},
            "corpus_stats": self.stats.to_dict() if self.stats else None,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CNNClassifier":
        stats = CorpusStats.from_dict(data["corpus_stats"]) if data.get("corpus_stats") else None
        return cls(
            table=EmbeddingTable.from_json(data["embedding"]),
            heads={k: ConvTextModel.from_json(v) for k, v in data["heads"].items()},
            max_len=int(data["max_len"]),
            threshold=float(data["threshold"]),
            train_params=TrainParams(**data["train_params"]),
            stats=stats,
            seed=int(data.get("seed", 0)),
        )


def save_model(model: CNNClassifier, path: str | Path) -> None:
    body = json.dumps(model.to_json(), sort_keys=True, separators=(",", ":"))
    Path(path).write_text(f"{MODEL_MAGIC}\n{body}\n", encoding="utf-8")


def load_model(path: str | Path) -> CNNClassifier:
    text = Path(path).read_text(encoding="utf-8")
    header, _, body = text.partition("\n")
    if header != MODEL_MAGIC:
        raise ValueError(f"{path}: not a {MODEL_MAGIC} model file")
    return CNNClassifier.from_json(json.loads(body))


def classify_sentence(models, sentence: Sentence) -> SentenceLabel:
    return models.classify(sentence)


@dataclass
class TrainingReport:
    accuracy: dict[str, float]
    train_size: int
    test_size: int


def train_classifier(
    documents: Sequence[tuple[Sequence[Sentence], Mapping[int, Sequence[str]]]],
    seed: int = 0,
    *,
    dim: int = 32,
    max_len: int = 18,
    train_params: TrainParams = TrainParams(),
    stats: CorpusStats | None = None,
    test_fraction: float = 0.2,
) -> tuple[CNNClassifier, TrainingReport]:
    """Train embeddings and all six heads; report held-out accuracy.

    ``documents`` pairs each document's sentences with its label map
    (sentence index -> label names; missing indices mean no labels).
    """
    table = train_embeddings([[s.tokens for s in sents] for sents, _ in documents], dim=dim, seed=seed)
    rows, targets = [], []
    for sents, labels in documents:
        for s in sents:
            rows.append(embed_sentence(s.tokens, table, max_len))
            targets.append(set(labels.get(s.index, ())))
    x = np.stack(rows)
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(rows))
    n_test = int(round(test_fraction * len(rows)))
    test, train = order[:n_test], order[n_test:]
    y = np.array([[label in t for label in LABELS] for t in targets], dtype=np.int64)
    results = train_heads(x[train], y[train], train_params, seed=seed)
    heads, accuracy = {}, {}
    for i, (label, result) in enumerate(zip(LABELS, results)):
        heads[label] = result.model
        if n_test:
            pred = result.model.predict_proba(x[test])[:, 1] >= 0.5
            accuracy[label] = float(np.mean(pred == y[test, i].astype(bool)))
        log.info("head %s: loss %.4f -> %.4f", label, result.initial_loss, result.losses[-1])
    model = CNNClassifier(table, heads, max_len, 0.5, train_params, stats, seed)
    return model, TrainingReport(accuracy, len(train), n_test)


# -- clustering --------------------------------------------------------------


@dataclass
class Clusters:
    rooms: dict[str, list[Sentence]]
    relations: list[Sentence]

    def memberships(self) -> int:
        return sum(len(v) for v in self.rooms.values()) + len(self.relations)


def cluster_by_room(labels: Sequence[SentenceLabel], sentences: Sequence[Sentence], strict: bool = False) -> Clusters:
    by_index = {lab.sentence_index: lab for lab in labels}
    rooms: dict[str, list[Sentence]] = {t: [] for t in ROOM_TYPES}
    relations = []
    for s in sentences:
        lab = by_index.get(s.index)
        if lab is None:
            raise ValueError(f"sentence {s.index} has no label")
        if not lab.room_tags and not lab.is_relation:
            msg = f"sentence {s.index} ({s.raw!r}) has no room tag or relation flag"
            if strict:
                raise UnlabeledSentence(msg)
            log.warning("%s; dropped", msg)
            continue
        for tag in lab.room_tags:
            rooms[tag].append(s)
        if lab.is_relation:
            relations.append(s)
    return Clusters(rooms, relations)


def format_labels(labels: Sequence[SentenceLabel]) -> str:
    return "".join(
        f"{lab.sentence_index}\t{','.join(lab.room_tags)}\t{'true' if lab.is_relation else 'false'}\n" for lab in labels
    )


def parse_labels(text: str) -> list[SentenceLabel]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3 or parts[2] not in ("true", "false"):
            raise ValueError(f"labels.tsv line {lineno}: expected index<TAB>tags<TAB>true|false")
        tags = tuple(t for t in parts[1].split(",") if t)
        if set(tags) - set(ROOM_TYPES):
            raise ValueError(f"labels.tsv line {lineno}: unknown room tag")
        out.append(SentenceLabel(int(parts[0]), tags, parts[2] == "true"))
    return out
