"""Selection of the hot-kernel backend.

The compiled extension (``qdownfold._kernels``, Cython) is preferred when
importable; otherwise the pure-NumPy fallback (``_kernels_py``) is used.
``QDOWNFOLD_KERNELS=python`` or ``=cython`` in the environment forces one
backend (the latter raises if the extension was never built).  Integer
outputs of the two backends are identical; benchmarks/bench_kernels.py
compares their speed.
"""

from __future__ import annotations

import os

from . import _kernels_py

_requested = os.environ.get("QDOWNFOLD_KERNELS", "").strip().lower()

if _requested == "python":
    _active = _kernels_py
elif _requested in ("", "cython"):
    try:
        from . import _kernels as _active  # type: ignore[no-redef]
    except ImportError:
        if _requested == "cython":
            raise ImportError(
                "QDOWNFOLD_KERNELS=cython requested but the compiled extension "
                "is not available; build it with `pip install -e .`"
            ) from None
        _active = _kernels_py
else:
    raise ValueError(
        f"unrecognized QDOWNFOLD_KERNELS value {_requested!r} (use 'cython' or 'python')"
    )

BACKEND: str = _active.BACKEND

anticommute_mask = _active.anticommute_mask
growth_stats = _active.growth_stats
anticommute_counts = _active.anticommute_counts
commutator_multiset = _active.commutator_multiset
profile_sweep = _active.profile_sweep
