"""Hot kernels, compiled when available.

The Cython extension is picked at import; set CROSSLAB_PURE_PYTHON=1 to
force the reference implementation.  Both produce identical results.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("CROSSLAB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # no compiler at install time
        _impl = _kernels_py

splitmix64 = _impl.splitmix64
mono_count = _impl.mono_count
greedy_descent = _impl.greedy_descent
random_pages = _impl.random_pages
anneal = _impl.anneal
bnb_min_mono = _impl.bnb_min_mono
sphere_crossings = _impl.sphere_crossings

__all__ = [
    "BACKEND",
    "splitmix64",
    "mono_count",
    "greedy_descent",
    "random_pages",
    "anneal",
    "bnb_min_mono",
    "sphere_crossings",
]
