"""Term-kernel selection: compiled extension when available, else pure Python.

FROBSTAB_KERNEL=python forces the fallback, FROBSTAB_KERNEL=c requires the
compiled module (raising ImportError when missing).
"""

import os

_choice = os.environ.get("FROBSTAB_KERNEL", "auto")
_impl = None

if _choice not in ("auto", "c", "python"):
    raise RuntimeError(f"FROBSTAB_KERNEL must be auto, c or python, not {_choice!r}")

if _choice in ("auto", "c"):
    try:
        from . import _speedups as _impl
    except ImportError:
        if _choice == "c":
            raise
        _impl = None

if _impl is None:
    from . import _ref as _impl

add_terms = _impl.add_terms
mul_terms = _impl.mul_terms
divmod_terms = _impl.divmod_terms


def implementation():
    """'c' when the compiled kernels are active, else 'python'."""
    return "c" if _impl.__name__.endswith("_speedups") else "python"
