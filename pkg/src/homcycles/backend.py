"""Kernel backend selection.

Hot inner loops exist twice: a numba @njit build (``_kernels_nb``) and a
numpy/python fallback (``_kernels_np``) with identical signatures.  The active
backend is chosen from the ``HOMCYCLES_BACKEND`` environment variable
(``auto`` | ``numba`` | ``numpy``, default ``auto``) and can be switched at
runtime with :func:`set_backend`, which the benchmark uses to time both.
"""

from __future__ import annotations

import os

from . import _kernels_np

_ENV_VAR = "HOMCYCLES_BACKEND"
_active_name: str | None = None
_active_module = None


def _numba_module():
    from . import _kernels_nb

    return _kernels_nb


def available_backends() -> list[str]:
    names = ["numpy"]
    try:
        _numba_module()
        names.insert(0, "numba")
    except ImportError:
        pass
    return names


def set_backend(name: str) -> str:
    """Select the kernel backend; returns the resolved name."""
    global _active_name, _active_module
    name = (name or "auto").lower()
    if name == "auto":
        try:
            _active_module = _numba_module()
            _active_name = "numba"
        except ImportError:
            _active_module = _kernels_np
            _active_name = "numpy"
    elif name == "numba":
        _active_module = _numba_module()
        _active_name = "numba"
    elif name == "numpy":
        _active_module = _kernels_np
        _active_name = "numpy"
    else:
        raise ValueError(f"unknown backend {name!r}; expected auto, numba or numpy")
    return _active_name


def active_backend() -> str:
    if _active_name is None:
        set_backend(os.environ.get(_ENV_VAR, "auto"))
    return _active_name


def kernels():
    """Return the active kernel module."""
    if _active_module is None:
        active_backend()
    return _active_module
