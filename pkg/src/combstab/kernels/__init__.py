"""Hot integer kernels with a compiled fast path.

At import time the compiled Cython backend is selected when available;
otherwise the pure-Python twin takes over.  Set the environment variable
``COMBSTAB_NO_SPEEDUPS=1`` to force the pure backend (useful for the
benchmark and for debugging).  Both backends are exact and agree bit for
bit; ``tests/test_kernels.py`` asserts the parity.
"""

from __future__ import annotations

import os

from . import _pure

_impl = _pure
BACKEND = "pure-python"

if not os.environ.get("COMBSTAB_NO_SPEEDUPS"):
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        pass

simplest_between = _impl.simplest_between
destabilizer_range = _impl.destabilizer_range


def available_backends() -> dict[str, object]:
    """Importable backend modules keyed by name (for benchmarks and parity tests)."""
    backends: dict[str, object] = {"pure-python": _pure}
    try:
        from . import _speedups

        backends["compiled"] = _speedups
    except ImportError:
        pass
    return backends
