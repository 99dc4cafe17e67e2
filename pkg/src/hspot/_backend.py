"""Kernel-core backend selection.

Imports the compiled Cython core when it is available and not disabled,
falling back to the pure-Python twin.  Set ``HSPOT_PURE=1`` in the
environment to force the fallback (used by the backend-agreement tests and
the benchmark).
"""

import os

from . import _corepy

if os.environ.get("HSPOT_PURE", "") not in ("", "0"):
    core = _corepy
else:
    try:
        from . import _core_cy as core  # type: ignore[no-redef]
    except ImportError:
        core = _corepy

pure = _corepy


def backend_name() -> str:
    """Name of the active kernel core: "compiled" or "pure"."""
    return core.BACKEND
