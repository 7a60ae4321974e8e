"""Backend selection for the annealing and enumeration kernels.

The compiled extension is used when it imports; set ``GROEBOPT_PURE=1`` to
force the pure-Python fallback.  ``BACKEND`` names the active one.
"""

import os

if os.environ.get("GROEBOPT_PURE", "") not in ("", "0"):
    from ._kernels_py import anneal_run, gray_below, gray_exhaustive

    BACKEND = "python"
else:
    try:
        from ._kernels import anneal_run, gray_below, gray_exhaustive

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import anneal_run, gray_below, gray_exhaustive

        BACKEND = "python"

__all__ = ["anneal_run", "gray_exhaustive", "gray_below", "BACKEND"]
