# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops.  Signatures mirror ``_pykernels`` exactly.

All sums are left-to-right folds so that two callers folding the same
terms in the same order get bit-identical results.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport pow, fabs, sqrt

cnp.import_array()


def power_sum(const double[::1] x, double e):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double s = 0.0
    for i in range(n):
        s += pow(fabs(x[i]), e)
    return s


def weighted_power_sum(const double[::1] x, const double[::1] w, double e):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double s = 0.0
    for i in range(n):
        s += w[i] * pow(fabs(x[i]), e)
    return s


def max_abs(const double[::1] x):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double m = 0.0, a
    for i in range(n):
        a = fabs(x[i])
        if a > m:
            m = a
    return m


def holder_sums(const double[::1] x, const double[::1] y, const double[::1] w,
                double e, double q):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double s1 = 0.0, sx = 0.0, sy = 0.0, ax, ay
    for i in range(n):
        ax = fabs(x[i])
        ay = fabs(y[i])
        s1 += w[i] * ax * ay
        sx += w[i] * pow(ax, e)
        sy += w[i] * pow(ay, q)
    return s1, sx, sy


def minkowski_sums(const double[::1] x, const double[::1] y, const double[::1] w, double e):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double sxy = 0.0, sx = 0.0, sy = 0.0
    for i in range(n):
        sxy += w[i] * pow(fabs(x[i] + y[i]), e)
        sx += w[i] * pow(fabs(x[i]), e)
        sy += w[i] * pow(fabs(y[i]), e)
    return sxy, sx, sy


def hardy_sums(const double[::1] a, double e):
    cdef Py_ssize_t i, n = a.shape[0]
    cdef double run = 0.0, lhs = 0.0, rhs = 0.0
    for i in range(n):
        run += a[i]
        lhs += pow(run / (i + 1), e)
        rhs += pow(a[i], e)
    return lhs, rhs


def hilbert_double_sum(const double[::1] a, const double[::1] b):
    cdef Py_ssize_t m, n, M = a.shape[0], N = b.shape[0]
    cdef double total = 0.0, row
    for m in range(M):
        if a[m] == 0.0:
            continue
        row = 0.0
        for n in range(N):
            row += b[n] / (m + n + 2)
        total += a[m] * row
    return total


def hilbert_kernel_partial(double m, double e, Py_ssize_t N):
    cdef Py_ssize_t n
    cdef double s = 0.0, inv = 1.0 / e
    cdef double mpow = pow(m, inv)
    for n in range(1, N + 1):
        s += mpow / (pow(<double>n, inv) * (m + n))
    return s


def circular_convolve(const double[::1] k, const double[::1] f, double h):
    cdef Py_ssize_t i, j, n = f.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double s
    for i in range(n):
        s = 0.0
        for j in range(n):
            s += k[j] * f[(i - j + n) % n]
        o[i] = h * s
    return out


def sign_enum_sup(const double[:, :] M):
    """max over sign vectors a, b of |a^T M b|, enumerating the row side.

    Walks the sign vectors (first sign fixed to +1) in Gray-code order so
    each step flips one row; column sums are rebuilt from scratch every
    4096 steps to keep accumulated rounding at the level of a direct sum.
    """
    cdef Py_ssize_t s = M.shape[0], t = M.shape[1]
    cdef Py_ssize_t i, j, flip
    cdef unsigned long long step, gray, ncodes = 1ULL << (s - 1)
    cdef double best = 0.0, total, d
    sg_arr = np.ones(s, dtype=np.float64)
    col_arr = np.zeros(t, dtype=np.float64)
    cdef double[::1] sg = sg_arr
    cdef double[::1] col = col_arr
    for step in range(ncodes):
        gray = step ^ (step >> 1)
        if step & 4095ULL == 0:
            sg[0] = 1.0
            for i in range(1, s):
                sg[i] = -1.0 if (gray >> (i - 1)) & 1ULL else 1.0
            for j in range(t):
                d = 0.0
                for i in range(s):
                    d += sg[i] * M[i, j]
                col[j] = d
        else:
            # the bit that changed between consecutive Gray codes
            flip = 1
            while not ((step >> (flip - 1)) & 1ULL):
                flip += 1
            sg[flip] = -sg[flip]
            for j in range(t):
                col[j] += 2.0 * sg[flip] * M[flip, j]
        total = 0.0
        for j in range(t):
            total += fabs(col[j])
        if total > best:
            best = total
    return best


def jacobi_svd(A_in, double tol=1e-12, int max_sweeps=100):
    """One-sided (Hestenes) Jacobi SVD of a tall matrix.

    Returns ``(s, U, V, sweeps)`` with ``s`` descending, ``A = U diag(s) V^T``.
    """
    A_arr = np.array(A_in, dtype=np.float64, order="F", copy=True)
    cdef Py_ssize_t m = A_arr.shape[0], n = A_arr.shape[1]
    V_arr = np.eye(n, dtype=np.float64, order="F")
    cdef double[::1, :] A = A_arr
    cdef double[::1, :] V = V_arr
    cdef Py_ssize_t i, j, r
    cdef int sweep, rotated
    cdef double alpha, beta, gamma, zeta, t, c, sn, ai, aj
    for sweep in range(max_sweeps):
        rotated = 0
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0
                for r in range(m):
                    alpha += A[r, i] * A[r, i]
                    beta += A[r, j] * A[r, j]
                    gamma += A[r, i] * A[r, j]
                if gamma == 0.0 or fabs(gamma) <= tol * sqrt(alpha * beta):
                    continue
                rotated = 1
                zeta = (beta - alpha) / (2.0 * gamma)
                if zeta >= 0.0:
                    t = 1.0 / (zeta + sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + sqrt(1.0 + zeta * zeta))
                c = 1.0 / sqrt(1.0 + t * t)
                sn = c * t
                for r in range(m):
                    ai = A[r, i]
                    aj = A[r, j]
                    A[r, i] = c * ai - sn * aj
                    A[r, j] = sn * ai + c * aj
                for r in range(n):
                    ai = V[r, i]
                    aj = V[r, j]
                    V[r, i] = c * ai - sn * aj
                    V[r, j] = sn * ai + c * aj
        if not rotated:
            break
    s_arr = np.sqrt((A_arr * A_arr).sum(axis=0))
    order = np.argsort(-s_arr, kind="stable")
    s_arr = s_arr[order]
    A_arr = A_arr[:, order]
    V_arr = V_arr[:, order]
    U_arr = np.zeros((m, n), dtype=np.float64)
    nz = s_arr > 0
    U_arr[:, nz] = A_arr[:, nz] / s_arr[nz]
    return s_arr, U_arr, np.ascontiguousarray(V_arr), sweep + 1
