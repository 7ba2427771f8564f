"""Backend selection for the row-reduction kernel.

The compiled kernel is used when it imported cleanly and the environment
variable ``SILTGEO_PURE_PYTHON`` is unset.  A compiled call that overflows
int64 is transparently retried on Python integers.
"""
import os

from . import _pykernel

_ckernel = None
if not os.environ.get("SILTGEO_PURE_PYTHON"):
    try:
        from . import _ckernel  # type: ignore[attr-defined]
    except ImportError:  # pragma: no cover - depends on the build
        _ckernel = None

BACKEND = "cython" if _ckernel is not None else "python"


def echelon(rows, ncols):
    if _ckernel is not None:
        try:
            return _ckernel.echelon(rows, ncols)
        except OverflowError:
            pass
    return _pykernel.echelon(rows, ncols)


def echelon_python(rows, ncols):
    return _pykernel.echelon(rows, ncols)


def echelon_compiled(rows, ncols):
    if _ckernel is None:
        raise ImportError("compiled kernel not available")
    return _ckernel.echelon(rows, ncols)
