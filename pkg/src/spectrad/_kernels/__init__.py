"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; otherwise the
numpy fallback is used.  Both expose the same six functions with identical
semantics, and the test suite cross-checks them against each other.
"""

try:
    from . import _core as _impl
except ImportError:  # extension not built; numpy fallback
    from . import pure as _impl

BACKEND = _impl.BACKEND_NAME

svdvals = _impl.svdvals
svd = _impl.svd
eigh = _impl.eigh
eigvalsh = _impl.eigvalsh
aluthge_step = _impl.aluthge_step
realpart_top_eig_grid = _impl.realpart_top_eig_grid


def backend_name():
    """Name of the kernel backend in use: "compiled" or "python"."""
    return BACKEND
