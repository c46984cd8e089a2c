"""Hot-loop kernels with a compiled core and a numpy fallback.

The compiled extension is used when it imports; set
``THETA_NORMS_KERNELS=python`` to force the fallback.  :func:`set_backend`
switches at runtime (tests and the benchmark use it).
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKEND = "python"
_impl = _pykernels


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def set_backend(name: str) -> str:
    """Select ``"cython"`` or ``"python"``; returns the previous backend name."""
    global BACKEND, _impl
    if name == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not built")
        impl = _ckernels
    elif name == "python":
        impl = _pykernels
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    previous = BACKEND
    BACKEND, _impl = name, impl
    return previous


def _vec(x) -> np.ndarray:
    return np.ascontiguousarray(x, dtype=np.float64)


def power_sum(x, e: float) -> float:
    return _impl.power_sum(_vec(x), float(e))


def weighted_power_sum(x, w, e: float) -> float:
    return _impl.weighted_power_sum(_vec(x), _vec(w), float(e))


def max_abs(x) -> float:
    return _impl.max_abs(_vec(x))


def holder_sums(x, y, w, e: float, q: float) -> tuple[float, float, float]:
    return _impl.holder_sums(_vec(x), _vec(y), _vec(w), float(e), float(q))


def minkowski_sums(x, y, w, e: float) -> tuple[float, float, float]:
    return _impl.minkowski_sums(_vec(x), _vec(y), _vec(w), float(e))


def hardy_sums(a, e: float) -> tuple[float, float]:
    return _impl.hardy_sums(_vec(a), float(e))


def hilbert_double_sum(a, b) -> float:
    return _impl.hilbert_double_sum(_vec(a), _vec(b))


def hilbert_kernel_partial(m: float, e: float, N: int) -> float:
    return _impl.hilbert_kernel_partial(float(m), float(e), int(N))


def circular_convolve(k, f, h: float) -> np.ndarray:
    return _impl.circular_convolve(_vec(k), _vec(f), float(h))


def sign_enum_sup(M) -> float:
    return _impl.sign_enum_sup(np.asarray(M, dtype=np.float64))


def jacobi_svd(A, tol: float = 1e-12, max_sweeps: int = 100):
    """Thin SVD ``A = U diag(s) V^T`` by one-sided Jacobi; ``s`` descending."""
    A = np.asarray(A, dtype=np.float64)
    if A.shape[0] < A.shape[1]:
        s, U, V, sweeps = _impl.jacobi_svd(A.T, tol, max_sweeps)
        return s, V, U, sweeps
    return _impl.jacobi_svd(A, tol, max_sweeps)


_requested = os.environ.get("THETA_NORMS_KERNELS", "").strip().lower()
if _requested == "python" or _ckernels is None:
    set_backend("python")
else:
    set_backend("cython")
