"""Select the compiled kernels when available, else the Python fallback.

Set ``T2P_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels as python_backend

compiled_backend = None
if not os.environ.get("T2P_PURE_PYTHON"):
    try:
        from . import _speedups as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

_impl = compiled_backend or python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

bm25_matrix = _impl.bm25_matrix
sgns_train = _impl.sgns_train
