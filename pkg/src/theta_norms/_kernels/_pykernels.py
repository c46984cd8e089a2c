"""numpy fallback for the compiled kernels; same signatures and fold order."""

from __future__ import annotations

import numpy as np

_ENUM_CHUNK = 1 << 14


def _fold(terms: np.ndarray) -> float:
    # cumsum accumulates strictly left to right (np.sum is pairwise)
    if terms.size == 0:
        return 0.0
    return float(np.cumsum(terms)[-1])


def power_sum(x, e):
    return _fold(np.abs(x) ** e)


def weighted_power_sum(x, w, e):
    return _fold(w * np.abs(x) ** e)


def max_abs(x):
    return float(np.max(np.abs(x))) if len(x) else 0.0


def holder_sums(x, y, w, e, q):
    ax = np.abs(x)
    ay = np.abs(y)
    return _fold(w * ax * ay), _fold(w * ax**e), _fold(w * ay**q)


def minkowski_sums(x, y, w, e):
    x = np.asarray(x)
    y = np.asarray(y)
    return (
        _fold(w * np.abs(x + y) ** e),
        _fold(w * np.abs(x) ** e),
        _fold(w * np.abs(y) ** e),
    )


def hardy_sums(a, e):
    a = np.asarray(a)
    means = np.cumsum(a) / np.arange(1, len(a) + 1)
    return _fold(means**e), _fold(a**e)


def hilbert_double_sum(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    M, N = len(a), len(b)
    if M == 0 or N == 0:
        return 0.0
    n_idx = np.arange(N, dtype=np.float64) + 2.0
    rows = np.empty(M)
    step = max(1, (1 << 22) // N)
    for start in range(0, M, step):
        m_idx = np.arange(start, min(M, start + step), dtype=np.float64)
        rows[start : start + len(m_idx)] = (b / (m_idx[:, None] + n_idx[None, :])).sum(axis=1)
    return _fold(a * rows)


def hilbert_kernel_partial(m, e, N):
    n = np.arange(1, N + 1, dtype=np.float64)
    inv = 1.0 / e
    return _fold(m**inv / (n**inv * (m + n)))


def circular_convolve(k, f, h):
    k = np.asarray(k)
    f = np.asarray(f)
    n = len(f)
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return h * (f[idx] @ k)


def sign_enum_sup(M):
    M = np.asarray(M, dtype=np.float64)
    s = M.shape[0]
    ncodes = 1 << (s - 1)
    bits = np.arange(s - 1)
    best = 0.0
    for start in range(0, ncodes, _ENUM_CHUNK):
        codes = np.arange(start, min(ncodes, start + _ENUM_CHUNK), dtype=np.uint64)
        signs = np.ones((len(codes), s))
        if s > 1:
            flips = (codes[:, None] >> bits[None, :].astype(np.uint64)) & np.uint64(1)
            signs[:, 1:] = 1.0 - 2.0 * flips
        best = max(best, float(np.abs(signs @ M).sum(axis=1).max()))
    return best


def jacobi_svd(A_in, tol=1e-12, max_sweeps=100):
    A = np.array(A_in, dtype=np.float64, order="F", copy=True)
    m, n = A.shape
    V = np.eye(n)
    sweep = 0
    for sweep in range(max_sweeps):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                ai = A[:, i]
                aj = A[:, j]
                alpha = float(ai @ ai)
                beta = float(aj @ aj)
                gamma = float(ai @ aj)
                if gamma == 0.0 or abs(gamma) <= tol * np.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                if zeta >= 0.0:
                    t = 1.0 / (zeta + np.sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                sn = c * t
                new_i = c * ai - sn * aj
                A[:, j] = sn * ai + c * aj
                A[:, i] = new_i
                vi = V[:, i].copy()
                V[:, i] = c * vi - sn * V[:, j]
                V[:, j] = sn * vi + c * V[:, j]
        if not rotated:
            break
    s = np.sqrt((A * A).sum(axis=0))
    order = np.argsort(-s, kind="stable")
    s = s[order]
    A = A[:, order]
    V = V[:, order]
    U = np.zeros((m, n))
    nz = s > 0
    U[:, nz] = A[:, nz] / s[nz]
    return s, U, np.ascontiguousarray(V), sweep + 1
