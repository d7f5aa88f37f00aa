"""Backend selection for the exhaustive-search kernels.

Prefers the compiled extension (``qmlines._ckernels``) and falls back to the
pure-Python twin.  Set ``QMLINES_BACKEND=py`` or ``QMLINES_BACKEND=c`` to
force one; the benchmark suite runs both.
"""

import os
from functools import lru_cache

from . import _kernels_py

_requested = os.environ.get("QMLINES_BACKEND", "").lower()
if _requested in ("py", "python", "pure"):
    _impl = _kernels_py
elif _requested in ("c", "cython", "compiled"):
    from . import _ckernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _kernels_py


def backend_name() -> str:
    return _impl.BACKEND


def available_backends() -> dict:
    """Importable kernel backends, keyed by name (for tests and benchmarks)."""
    backends = {_kernels_py.BACKEND: _kernels_py}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        backends[_ckernels.BACKEND] = _ckernels
    return backends


def canonical_batch(n: int, masks) -> list[int]:
    return _impl.canonical_batch(n, masks)


@lru_cache(maxsize=None)
def integer_canon_witnesses(n: int, kmax: int) -> dict[int, tuple[int, ...]]:
    return _impl.integer_canon_witnesses(n, kmax)


def find_integer_witness(n: int, kmax: int, target_masks) -> tuple[int, ...] | None:
    return _impl.find_integer_witness(n, kmax, frozenset(target_masks))


@lru_cache(maxsize=None)
def digraph_canon_witnesses(n: int) -> dict[int, int]:
    return _impl.digraph_canon_witnesses(n)


def find_digraph_witness(n: int, target_masks) -> int | None:
    return _impl.find_digraph_witness(n, frozenset(target_masks))
