"""Select the rank kernel backend at import time.

The compiled extension is preferred.  Setting ``PFANO_PURE_PYTHON=1``
forces the pure-Python fallback (used by the benchmark and the
backend-agreement tests).
"""

import os

from . import _pykernels

try:
    if os.environ.get("PFANO_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-python backend requested")
    from . import _kernels as _backend

    BACKEND = "compiled"
except ImportError:
    _backend = _pykernels
    BACKEND = "python"

rank_mod = _backend.rank_mod
subset_block_ranks = _backend.subset_block_ranks
circuit_triples = _backend.circuit_triples
