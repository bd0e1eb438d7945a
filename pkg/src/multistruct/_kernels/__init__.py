"""Kernel backend selection.

Two implementations of the hot kernels exist: a compiled Cython module
(`_speed`) and a pure-Python module (`_pure`) with identical semantics.
The compiled one is preferred when importable; setting the environment
variable MULTISTRUCT_PURE=1 forces the pure backend (useful for testing
and benchmarking).
"""

from __future__ import annotations

import os

if os.environ.get("MULTISTRUCT_PURE") == "1":
    from . import _pure as _impl

    BACKEND = "pure"
else:
    try:
        from . import _speed as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _pure as _impl

        BACKEND = "pure"

mul_int_dicts = _impl.mul_int_dicts
bareiss_rank = _impl.bareiss_rank
bareiss_det = _impl.bareiss_det

__all__ = ["BACKEND", "mul_int_dicts", "bareiss_rank", "bareiss_det"]
