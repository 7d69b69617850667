# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled versions of the loops in ``_kernels.py`` (same signatures)."""

import numpy as np

from libc.math cimport exp


def bm25_matrix(const int[:, ::1] tf, const long[::1] q_ptr, const int[::1] q_tok,
                const double[::1] idf, const double[::1] lengths, double avg_len,
                double alpha, double beta, double gamma):
    cdef Py_ssize_t n = tf.shape[0]
    cdef Py_ssize_t i, j, p
    cdef int q
    cdef double k, s, f
    out = np.zeros((n, n))
    cdef double[:, ::1] o = out
    with nogil:
        for i in range(n):
            k = alpha * (1.0 - beta + beta * lengths[i] / avg_len)
            for j in range(n):
                s = 0.0
                for p in range(q_ptr[j], q_ptr[j + 1]):
                    q = q_tok[p]
                    f = tf[i, q]
                    s += idf[q] * (f * (alpha + 1.0) / (f + k) + gamma)
                o[i, j] = s
    return out


cdef inline double _sigmoid(double x) nogil:
    if x > 30.0:
        x = 30.0
    elif x < -30.0:
        x = -30.0
    return 1.0 / (1.0 + exp(-x))


def sgns_train(double[:, ::1] w_in, double[:, ::1] w_out, const int[::1] centers,
               const int[::1] contexts, const int[:, ::1] negatives, const double[::1] lrs):
    cdef Py_ssize_t n = centers.shape[0]
    cdef Py_ssize_t dim = w_in.shape[1]
    cdef Py_ssize_t k = negatives.shape[1]
    cdef Py_ssize_t p, t, d
    cdef int c, target
    cdef double label, dot, g, lr
    grad_arr = np.zeros(dim)
    cdef double[::1] grad = grad_arr
    with nogil:
        for p in range(n):
            c = centers[p]
            lr = lrs[p]
            for d in range(dim):
                grad[d] = 0.0
            for t in range(k + 1):
                if t == 0:
                    target = contexts[p]
                    label = 1.0
                else:
                    target = negatives[p, t - 1]
                    label = 0.0
                dot = 0.0
                for d in range(dim):
                    dot = dot + w_in[c, d] * w_out[target, d]
                g = lr * (label - _sigmoid(dot))
                for d in range(dim):
                    grad[d] = grad[d] + g * w_out[target, d]
                    w_out[target, d] = w_out[target, d] + g * w_in[c, d]
            for d in range(dim):
                w_in[c, d] = w_in[c, d] + grad[d]
