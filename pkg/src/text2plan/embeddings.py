"""Skip-gram word vectors with negative sampling, trained on the local corpus."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .errors import EmptyCorpus


@dataclass
class EmbeddingTable:
    dim: int
    vectors: Mapping[str, np.ndarray]
    unk_vector: np.ndarray

    def __getitem__(self, token: str) -> np.ndarray:
        return self.vectors.get(token, self.unk_vector)

    def __contains__(self, token: str) -> bool:
        return token in self.vectors

    def cosine(self, a: str, b: str) -> float:
        # vectors are unit norm
        return float(self[a] @ self[b])

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "vocab": list(self.vectors),
            "vectors": [self.vectors[t].tolist() for t in self.vectors],
            "unk": self.unk_vector.tolist(),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "EmbeddingTable":
        vectors = {t: np.asarray(v, dtype=np.float64) for t, v in zip(data["vocab"], data["vectors"])}
        return cls(int(data["dim"]), vectors, np.asarray(data["unk"], dtype=np.float64))


def _unit(rows: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(rows, axis=-1, keepdims=True)
    return rows / np.where(norms > 0, norms, 1.0)


def _training_pairs(ids: list[np.ndarray], keep_prob: np.ndarray, window: int, rng: np.random.Generator):
    centers, contexts = [], []
    for sent in ids:
        kept = sent[rng.random(len(sent)) < keep_prob[sent]]
        n = len(kept)
        for i in range(n):
            for j in range(max(0, i - window), min(n, i + window + 1)):
                if j != i:
                    centers.append(kept[i])
                    contexts.append(kept[j])
    return np.asarray(centers, dtype=np.int32), np.asarray(contexts, dtype=np.int32)


def train_embeddings(
    corpus: Sequence[Sequence[Sequence[str]]],
    dim: int = 32,
    seed: int = 0,
    *,
    window: int = 2,
    negatives: int = 5,
    epochs: int = 30,
    lr: float = 0.025,
    subsample: float = 1e-3,
) -> EmbeddingTable:
    """Train on tokenized documents (documents -> sentences -> tokens).

    Frequent words are subsampled as in word2vec; negatives are drawn from
    the unigram distribution raised to 3/4. All randomness comes from
    ``seed`` and is drawn in Python, so the compiled and fallback kernels
    consume identical pair streams.
    """
    sentences = [list(s) for doc in corpus for s in doc if len(s)]
    counts = Counter(t for s in sentences for t in s)
    if not counts:
        raise EmptyCorpus("no tokens to train embeddings on")
    vocab = sorted(counts)
    index = {t: i for i, t in enumerate(vocab)}
    freq = np.array([counts[t] for t in vocab], dtype=np.float64)
    rng = np.random.default_rng(seed)

    total = freq.sum()
    ratio = freq / total
    keep_prob = np.minimum(1.0, (np.sqrt(ratio / subsample) + 1.0) * subsample / ratio)
    noise = freq**0.75
    noise /= noise.sum()

    v = len(vocab)
    w_in = (rng.random((v, dim)) - 0.5) / dim
    w_out = np.zeros((v, dim))
    ids = [np.array([index[t] for t in s], dtype=np.int32) for s in sentences]

    epoch_pairs = [_training_pairs(ids, keep_prob, window, rng) for _ in range(epochs)]
    n_total = sum(len(c) for c, _ in epoch_pairs)
    done = 0
    for centers, contexts in epoch_pairs:
        n = len(centers)
        if n == 0:
            continue
        neg = rng.choice(v, size=(n, negatives), p=noise).astype(np.int32)
        progress = (done + np.arange(n)) / max(1, n_total)
        lrs = lr * np.maximum(1e-4, 1.0 - progress)
        kernels.sgns_train(w_in, w_out, centers, contexts, neg, lrs)
        done += n

    vectors = _unit(w_in)
    unk = _unit(rng.standard_normal(dim))
    return EmbeddingTable(dim, {t: vectors[i] for t, i in index.items()}, unk)


def embed_sentence(tokens: Sequence[str], table: EmbeddingTable, max_len: int) -> np.ndarray:
    """``max_len x dim`` matrix, truncated or zero padded at the end."""
    if max_len < 1:
        raise ValueError("max_len must be positive")
    out = np.zeros((max_len, table.dim))
    for i, tok in enumerate(tokens[:max_len]):
        out[i] = table[tok]
    return out
