"""Hot string kernels.

The compiled ``_core`` extension is used when it is importable; otherwise
(or with ``STURMREP_PURE=1`` in the environment) the pure-Python ``_pure``
module is used.  ``BACKEND`` names the active implementation.
"""
import os

from . import _pure

BACKEND = "python"
longest_earlier_suffix = _pure.longest_earlier_suffix
z_array = _pure.z_array

if os.environ.get("STURMREP_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _core
    except ImportError:
        _core = None
    else:
        BACKEND = "cython"
        longest_earlier_suffix = _core.longest_earlier_suffix
        z_array = _core.z_array

__all__ = ["BACKEND", "longest_earlier_suffix", "z_array"]
