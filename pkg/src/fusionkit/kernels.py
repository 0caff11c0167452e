"""Kernel selection.

The compiled ``_speedups`` extension is used when it imports; otherwise the
pure-Python ``_fallback`` is used.  Setting ``FUSIONKIT_PURE_PYTHON=1``
forces the fallback.
"""
import os

from . import _fallback

if os.environ.get("FUSIONKIT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _fallback
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = _fallback

IMPLEMENTATION = _impl.IMPLEMENTATION
closure = _impl.closure
find_row = _impl.find_row
first_conjugator_into = _impl.first_conjugator_into
commute_mask = _impl.commute_mask
normalize_mask = _impl.normalize_mask
conjugation_orbit = _impl.conjugation_orbit

__all__ = [
    "IMPLEMENTATION",
    "closure",
    "find_row",
    "first_conjugator_into",
    "commute_mask",
    "normalize_mask",
    "conjugation_orbit",
]
