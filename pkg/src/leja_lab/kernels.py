"""Kernel backend selection: compiled extension if present, numpy otherwise.

Set LEJA_LAB_PURE=1 to force the numpy fallback even when the compiled
extension is importable (useful for benchmarking and debugging).
"""
import os

_force_pure = os.environ.get("LEJA_LAB_PURE", "").strip() not in ("", "0")

if not _force_pure:
    try:
        from . import _kernels as _impl

        backend = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        backend = "python"
else:
    from . import _kernels_py as _impl

    backend = "python"

leja_indices = _impl.leja_indices
lebesgue_on_mesh = _impl.lebesgue_on_mesh
