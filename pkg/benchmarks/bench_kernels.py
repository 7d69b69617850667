"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Both backends get identical inputs; the script also checks that their
outputs agree before reporting timings.
"""

import argparse
import statistics
import time

import numpy as np

from text2plan import _kernels as python_backend
from text2plan.kernels import compiled_backend


def bm25_inputs(n_sentences=60, vocab=300, seed=0):
    rng = np.random.default_rng(seed)
    tf = rng.integers(0, 3, (n_sentences, vocab)).astype(np.int32)
    lens = rng.integers(2, 10, n_sentences)
    ptr = np.concatenate([[0], np.cumsum(lens)]).astype(np.int64)
    toks = rng.integers(0, vocab, ptr[-1]).astype(np.int32)
    idf = rng.normal(size=vocab)
    lengths = tf.sum(axis=1).astype(float)
    return (tf, ptr, toks, idf, lengths, float(lengths.mean()), 1.2, 0.75, 1.0)


def sgns_inputs(pairs=50_000, vocab=500, dim=32, seed=0):
    rng = np.random.default_rng(seed)
    w_in = (rng.random((vocab, dim)) - 0.5) / dim
    w_out = np.zeros((vocab, dim))
    centers = rng.integers(0, vocab, pairs).astype(np.int32)
    contexts = rng.integers(0, vocab, pairs).astype(np.int32)
    negatives = rng.integers(0, vocab, (pairs, 5)).astype(np.int32)
    lrs = np.linspace(0.025, 0.0001, pairs)
    return w_in, w_out, centers, contexts, negatives, lrs


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled_backend is None:
        raise SystemExit("compiled extension not built (or T2P_PURE_PYTHON is set); nothing to compare")

    rows = []
    bm = bm25_inputs()
    assert np.array_equal(compiled_backend.bm25_matrix(*bm), python_backend.bm25_matrix(*bm))
    for name, impl in (("cython", compiled_backend), ("python", python_backend)):
        rows.append(("bm25_matrix 60x60", name, *best_of(lambda: impl.bm25_matrix(*bm), args.repeat)))

    base = sgns_inputs()
    a, b = [x.copy() for x in base[:2]], [x.copy() for x in base[:2]]
    compiled_backend.sgns_train(*a, *base[2:])
    python_backend.sgns_train(*b, *base[2:])
    assert np.allclose(a[0], b[0], atol=1e-10)

    def run_sgns(impl):
        w_in, w_out = base[0].copy(), base[1].copy()
        impl.sgns_train(w_in, w_out, *base[2:])

    for name, impl in (("cython", compiled_backend), ("python", python_backend)):
        rows.append(("sgns_train 50k pairs", name, *best_of(lambda: run_sgns(impl), args.repeat)))

    print(f"{'kernel':<22}{'backend':<9}{'best s':>10}{'median s':>10}")
    for kernel, backend, best, median in rows:
        print(f"{kernel:<22}{backend:<9}{best:>10.4f}{median:>10.4f}")
    for kernel in dict.fromkeys(r[0] for r in rows):
        fast, slow = (r[2] for r in rows if r[0] == kernel)
        print(f"{kernel}: compiled is {slow / fast:.0f}x faster")


if __name__ == "__main__":
    main()
