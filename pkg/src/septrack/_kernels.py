"""Kernel backend selection.

The compiled extension is optional. When it is missing (or when
SEPTRACK_FORCE_PURE=1 is set) the NumPy fallback serves the same three
entry points with identical results.
"""

from __future__ import annotations

import os

from . import _fallback

if os.environ.get("SEPTRACK_FORCE_PURE") == "1":
    _impl = _fallback
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _fallback

ENVELOPE = _fallback.ENVELOPE

cycle_scan = _impl.cycle_scan
drawing_conflicts = _impl.drawing_conflicts
interleave_conflict = _impl.interleave_conflict


def backend_name() -> str:
    return "compiled" if _impl.__name__.endswith("_speedups") else "pure"


def get_impl(name: str):
    """Fetch a specific backend by name ("compiled" or "pure").

    Used by the differential tests and the benchmark; raises ImportError
    when the compiled extension is unavailable.
    """
    if name == "pure":
        return _fallback
    if name == "compiled":
        from . import _speedups

        return _speedups
    raise ValueError(f"unknown backend {name!r}")
