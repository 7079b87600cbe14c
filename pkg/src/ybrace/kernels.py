"""Kernel selection: compiled extension when available, pure numpy otherwise.

Set YBRACE_PURE=1 to force the fallback (used by the benchmark and tests).
"""

import os

from ybrace._speed_py import ClosureCapExceeded  # noqa: F401  (canonical home)

if os.environ.get("YBRACE_PURE") == "1":
    from ybrace import _speed_py as _impl
else:
    try:
        from ybrace import _speed as _impl  # type: ignore[attr-defined]
    except ImportError:
        from ybrace import _speed_py as _impl

BACKEND = _impl.BACKEND
bfs_closure = _impl.bfs_closure
element_orders = _impl.element_orders
reduce_vectors = _impl.reduce_vectors
