"""Kernel backend selection: compiled extension when available, pure otherwise.

Set GENTLEBANDS_KERNEL=py to force the pure backend, =c to require the
compiled one (ImportError if it was not built).
"""

import os

_choice = os.environ.get("GENTLEBANDS_KERNEL", "").strip().lower()

if _choice in ("py", "pure", "python"):
    from . import pure as _impl
elif _choice in ("c", "compiled", "speedups"):
    from . import _speedups as _impl  # noqa: F401  (raises if not built)
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        from . import pure as _impl

BACKEND = _impl.BACKEND
bareiss_rank = _impl.bareiss_rank
top_class_profiles = _impl.top_class_profiles


def backends():
    """All importable kernel backends, for cross-checks and benchmarks."""
    from . import pure

    found = {"pure": pure}
    try:
        from . import _speedups

        found["compiled"] = _speedups
    except ImportError:
        pass
    return found
