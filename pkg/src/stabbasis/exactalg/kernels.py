"""Backend selection for the polynomial kernels.

The compiled extension ``_kernels`` is used when it was built; otherwise the
pure-Python module with the same functions is used.  ``use_backend`` switches
at runtime (tests and the benchmark run both).
"""
from __future__ import annotations

from types import ModuleType

from . import _kernels_py

try:  # pragma: no cover - depends on the build
    from . import _kernels as _kernels_c
except ImportError:  # pragma: no cover
    _kernels_c = None

impl: ModuleType = _kernels_c if _kernels_c is not None else _kernels_py


def available() -> list[str]:
    return ["python"] + (["cython"] if _kernels_c is not None else [])


def use_backend(name: str) -> str:
    """Select ``"python"`` or ``"cython"``; returns the previous backend name."""
    global impl
    prev = impl.BACKEND
    if name == "python":
        impl = _kernels_py
    elif name == "cython":
        if _kernels_c is None:
            raise RuntimeError("compiled kernels are not built")
        impl = _kernels_c
    else:
        raise ValueError(name)
    return prev


def backend() -> str:
    return impl.BACKEND
