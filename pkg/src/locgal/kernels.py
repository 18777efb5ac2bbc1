"""Backend selection for the bitmask kernels.

The compiled extension is used whenever it imports (it has a single-word
path and a multiword path for lattices wider than 64 elements); otherwise the
pure-Python module is used. Setting ``LOCGAL_PURE_PYTHON=1`` in the
environment forces the fallback.
"""

import os
from contextlib import contextmanager

from . import _kernels_py

try:
    from . import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

_forced = os.environ.get("LOCGAL_PURE_PYTHON", "") not in ("", "0")


def compiled_available():
    return _kernels_c is not None


def for_width(nbits):
    """Kernel module able to handle masks of ``nbits`` bits."""
    if _kernels_c is not None and not _forced and nbits <= _kernels_c.MAX_BITS:
        return _kernels_c
    return _kernels_py


def active_backend(nbits=64):
    return for_width(nbits).BACKEND


@contextmanager
def forced_python(flag=True):
    """Temporarily force (or un-force) the pure-Python backend."""
    global _forced
    old = _forced
    _forced = flag
    try:
        yield
    finally:
        _forced = old
