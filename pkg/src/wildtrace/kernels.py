"""Kernel backend selection.

The compiled extension is preferred when present; set ``WILDTRACE_PURE=1`` to
force the pure-Python kernels (used by the benchmark for comparison).
"""

import os

if os.environ.get("WILDTRACE_PURE"):
    from . import _kernels_py as impl
else:
    try:
        from . import _kernels as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as impl

BACKEND = impl.BACKEND
IRREDUCIBLE = impl.IRREDUCIBLE
conv = impl.conv
recip = impl.recip
gf_mul = impl.gf_mul
gf_inv = impl.gf_inv
