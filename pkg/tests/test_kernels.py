import os
import subprocess
import sys

import numpy as np
import pytest

from text2plan import _kernels, kernels


def _backend_in_subprocess(**env):
    code = "from text2plan import kernels; print(kernels.BACKEND)"
    full = {**os.environ, **env}
    return subprocess.run([sys.executable, "-c", code], env=full, capture_output=True, text=True, check=True).stdout.strip()


def test_compiled_backend_is_built():
    # the editable install compiles the extension; a missing build should be loud
    assert kernels.BACKEND == "cython"
    assert kernels.compiled_backend is not None


def test_env_var_forces_fallback():
    assert _backend_in_subprocess(T2P_PURE_PYTHON="") == "cython"
    assert _backend_in_subprocess(T2P_PURE_PYTHON="1") == "python"


def test_fallback_end_to_end_matches(tmp_path):
    text = tmp_path / "h.txt"
    text.write_text("The hall is 300 by 200. The hall leads to the kitchen. The kitchen has a sink.")
    outs = {}
    for flag in ("", "1"):
        out = tmp_path / f"o{flag}"
        env = {**os.environ, "T2P_PURE_PYTHON": flag}
        subprocess.run(
            [sys.executable, "-m", "text2plan", "render", str(text), "--out", str(out)],
            env=env,
            check=True,
        )
        outs[flag] = {p.name: p.read_bytes() for p in out.iterdir()}
    assert outs[""] == outs["1"]


@pytest.mark.parametrize("n,v", [(1, 1), (3, 7), (25, 40)])
def test_bm25_parity_shapes(n, v):
    rng = np.random.default_rng(n)
    tf = rng.integers(0, 4, (n, v)).astype(np.int32)
    lens = rng.integers(0, 5, n)
    ptr = np.concatenate([[0], np.cumsum(lens)]).astype(np.int64)
    toks = rng.integers(0, v, ptr[-1]).astype(np.int32)
    idf = rng.normal(size=v)
    lengths = rng.integers(1, 12, n).astype(float)
    args = (tf, ptr, toks, idf, lengths, 5.0, 1.2, 0.75, 1.0)
    assert np.array_equal(kernels.compiled_backend.bm25_matrix(*args), _kernels.bm25_matrix(*args))


def test_sgns_parity_long_stream():
    rng = np.random.default_rng(9)
    v, dim, n = 50, 32, 5000
    w_in = (rng.random((v, dim)) - 0.5) / dim
    w_out = np.zeros((v, dim))
    c = rng.integers(0, v, n).astype(np.int32)
    x = rng.integers(0, v, n).astype(np.int32)
    neg = rng.integers(0, v, (n, 5)).astype(np.int32)
    lrs = np.full(n, 0.025)
    a = (w_in.copy(), w_out.copy())
    b = (w_in.copy(), w_out.copy())
    kernels.compiled_backend.sgns_train(*a, c, x, neg, lrs)
    _kernels.sgns_train(*b, c, x, neg, lrs)
    assert np.max(np.abs(a[0] - b[0])) < 1e-10
    assert np.max(np.abs(a[1] - b[1])) < 1e-10
