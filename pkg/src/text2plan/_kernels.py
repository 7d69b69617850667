"""Pure-Python implementations of the hot loops.

These mirror ``_speedups.pyx`` operation for operation; the BM25 matrix is
bit-identical between the two, the skip-gram update agrees to rounding.
"""

import math

import numpy as np


def bm25_matrix(tf, q_ptr, q_tok, idf, lengths, avg_len, alpha, beta, gamma):
    """``out[i, j]`` scores sentence ``i`` as document against query ``j``."""
    tf = tf.tolist()
    q_ptr = q_ptr.tolist()
    q_tok = q_tok.tolist()
    idf = idf.tolist()
    lengths = lengths.tolist()
    n = len(tf)
    out = np.zeros((n, n))
    for i in range(n):
        row = tf[i]
        k = alpha * (1.0 - beta + beta * lengths[i] / avg_len)
        for j in range(n):
            s = 0.0
            for p in range(q_ptr[j], q_ptr[j + 1]):
                q = q_tok[p]
                f = row[q]
                s += idf[q] * (f * (alpha + 1.0) / (f + k) + gamma)
            out[i, j] = s
    return out


def _sigmoid(x):
    x = min(30.0, max(-30.0, x))
    return 1.0 / (1.0 + math.exp(-x))


def sgns_train(w_in, w_out, centers, contexts, negatives, lrs):
    """In-place skip-gram negative-sampling SGD over a sequence of pairs."""
    k = negatives.shape[1]
    for p in range(centers.shape[0]):
        h = w_in[centers[p]]
        grad = np.zeros_like(h)
        lr = lrs[p]
        for t in range(k + 1):
            if t == 0:
                target, label = contexts[p], 1.0
            else:
                target, label = negatives[p, t - 1], 0.0
            out = w_out[target]
            g = lr * (label - _sigmoid(float(h @ out)))
            grad += g * out
            out += g * h
        h += grad
