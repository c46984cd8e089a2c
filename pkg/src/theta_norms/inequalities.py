"""Direct numerical checks of the discrete inequalities with sharp constants.

Every checker returns an :class:`~theta_norms.report.InequalityReport`;
none of them raises when an inequality fails, only on bad input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels as K
from .errors import ArgError, ConjugacyError, NormOverflowError, PositivityError, SizeError
from .exponent import INF, ExponentValue, as_exponent, conjugate_exponent
from .report import DEFAULT_REL_TOL, InequalityReport
from .sequence_space import as_sequence, scaled_norm

HILBERT_MAX_TERMS = 10**8


def _entries(x) -> np.ndarray:
    if isinstance(x, np.ndarray) and x.dtype == np.float64 and x.ndim == 1:
        return x
    if hasattr(x, "samples"):
        return x.samples
    return as_sequence(x).entries


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    a, b = _entries(x), _entries(y)
    if a.shape != b.shape:
        raise ArgError(f"length mismatch: {a.size} vs {b.size}")
    return a, b


def _finite(*values: float) -> None:
    if not all(math.isfinite(v) for v in values):
        raise NormOverflowError("power sums overflowed; rescale the inputs (norms are homogeneous)")


def _open_exponent(e) -> float:
    e = as_exponent(e)
    if e is INF or not e > 1.0:
        raise ArgError(f"exponent must satisfy 1 < e < inf, got {e!r}")
    return e


def hilbert_constant(e: float) -> float:
    return math.pi / math.sin(math.pi / e)


def hardy_constant(e: float) -> float:
    return (e / (e - 1.0)) ** e


def holder_seq(x, y, e: ExponentValue, tol: float = DEFAULT_REL_TOL) -> InequalityReport:
    """sum |x_k y_k| <= ||x||_e ||y||_q with q the conjugate of e."""
    e = _open_exponent(e)
    q = conjugate_exponent(e)
    a, b = _pair(x, y)
    s1, sx, sy = K.holder_sums(a, b, np.ones(a.size), e, q)
    _finite(s1, sx, sy)
    return InequalityReport.evaluate("holder_seq", s1, sx ** (1.0 / e) * sy ** (1.0 / q), tol)


def minkowski_seq(x, y, e: ExponentValue, tol: float = DEFAULT_REL_TOL) -> InequalityReport:
    e = as_exponent(e)
    a, b = _pair(x, y)
    if e is INF:
        return InequalityReport.evaluate(
            "minkowski_seq", K.max_abs(a + b), K.max_abs(a) + K.max_abs(b), tol
        )
    sxy, sx, sy = K.minkowski_sums(a, b, np.ones(a.size), e)
    _finite(sxy, sx, sy)
    inv = 1.0 / e
    return InequalityReport.evaluate("minkowski_seq", sxy**inv, sx**inv + sy**inv, tol)


def generalized_holder(
    xs: Sequence, es: Sequence[ExponentValue], mu=None, tol: float = DEFAULT_REL_TOL
) -> InequalityReport:
    """||prod x_k||_1 <= prod ||x_k||_{e_k} when sum 1/e_k = 1.

    Factors may be sequences or grid functions; ``mu`` (a measure space)
    supplies integration weights, counting measure otherwise.
    """
    if len(xs) != len(es) or not xs:
        raise ArgError("need one exponent per factor")
    es = [as_exponent(e) for e in es]
    recip = sum(0.0 if e is INF else 1.0 / e for e in es)
    if abs(recip - 1.0) > 1e-10:
        raise ConjugacyError(f"sum of reciprocal exponents is {recip!r}, not 1")
    arrays = [_entries(x) for x in xs]
    n = arrays[0].size
    if any(a.size != n for a in arrays):
        raise ArgError("all factors must have the same length")
    w = np.ones(n) if mu is None else np.asarray(mu.weights, dtype=np.float64)
    if w.size != n:
        raise ArgError("measure does not match factor length")
    prod = np.ones(n)
    for a in arrays:
        prod = prod * a
    lhs = K.weighted_power_sum(prod, w, 1.0)
    rhs = 1.0
    for a, e in zip(arrays, es):
        if e is INF:
            rhs *= K.max_abs(a[w > 0]) if np.any(w > 0) else 0.0
        else:
            rhs *= scaled_norm(a, e, w)
    _finite(lhs, rhs)
    return InequalityReport.evaluate("generalized_holder", lhs, rhs, tol)


def hardy(a, e: ExponentValue, tol: float = DEFAULT_REL_TOL) -> InequalityReport:
    """sum_n (A_n / n)^e <= (e/(e-1))^e sum_n a_n^e over the stored prefix."""
    e = _open_exponent(e)
    arr = _entries(a)
    if arr.size == 0 or np.any(arr <= 0):
        raise PositivityError("Hardy's inequality needs strictly positive terms")
    lhs, sum_pow = K.hardy_sums(arr, e)
    _finite(lhs, sum_pow)
    return InequalityReport.evaluate("hardy", lhs, hardy_constant(e) * sum_pow, tol)


_GL20 = np.polynomial.legendre.leggauss(20)
_GL10 = np.polynomial.legendre.leggauss(10)


def _log_panels(fn, T0: float, V: float, rule, width: float = 0.5) -> float:
    """int_{T0}^{T0 e^V} fn(t) dt via t = T0 e^v and Gauss-Legendre panels in v."""
    x, w = rule
    edges = np.linspace(0.0, V, max(1, math.ceil(V / width)) + 1)
    a, b = edges[:-1, None], edges[1:, None]
    v = 0.5 * (a + b) + 0.5 * (b - a) * x[None, :]
    t = T0 * np.exp(v)
    return math.fsum((0.5 * (b - a) * fn(t) * t * w[None, :]).ravel().tolist())


def hardy_power_family(
    delta: float, e: ExponentValue = 2.0, N: int = 10_000, tol: float = DEFAULT_REL_TOL
) -> InequalityReport:
    """Hardy's inequality for the full series a_n = n^(-1/e - delta).

    The first N terms are summed exactly; past N the partial sums
    A_n = sum_{k<=n} a_k follow their Euler-Maclaurin expansion (constant
    fitted to the exact A_N) and both tails are integrals with a midpoint
    correction.  As delta -> 0 the ratio approaches 1, which prefix sums
    alone cannot show: their missing tail grows like N^(-e delta) / delta.
    """
    e = _open_exponent(e)
    s = 1.0 / e + delta
    if not 0.0 < delta or not s < 1.0:
        raise ArgError("need 0 < delta < 1 - 1/e")
    if N < 10:
        raise ArgError("N must be >= 10")
    n = np.arange(1, N + 1, dtype=np.float64)
    a = n**-s
    lhs_p, rhs_p = K.hardy_sums(a, e)
    A_N = float(np.cumsum(a)[-1])

    def growth(t):
        return t ** (1.0 - s) / (1.0 - s) + 0.5 * t**-s - s * t ** (-s - 1.0) / 12.0

    c0 = A_N - growth(float(N))

    def g(t):
        return ((c0 + growth(t)) / t) ** e

    T0 = N + 0.5
    sigma = e * s
    # far tail: (A/t)^e = lead^e t^(-es) (1 + e (1-s) c0 t^(s-1) + ...)
    V = min(400.0, 40.0 / (1.0 - s))
    T1 = T0 * math.exp(V)
    lead = (1.0 / (1.0 - s)) ** e
    far = lead * (T1 ** (1.0 - sigma) / (sigma - 1.0) + e * (1.0 - s) * c0 * T1 ** (s - sigma) / (sigma - s))
    body = _log_panels(g, T0, V, _GL20)
    body_coarse = _log_panels(g, T0, V, _GL10)
    h = 1e-3 * T0
    dg = (g(T0 + h) - g(T0 - h)) / (2.0 * h)
    lhs_tail = body + far + dg / 24.0
    rhs_tail = T0 ** (1.0 - sigma) / (sigma - 1.0) - sigma * T0 ** (-sigma - 1.0) / 24.0
    # quadrature gap, next midpoint term, next expansion term of A_n, far-tail remainder
    err = (
        abs(body - body_coarse)
        + abs(dg) / T0**2
        + e * lhs_tail * s * (s + 1) * (s + 2) * N ** (-s - 3.0) / 720.0 / A_N
        + far * abs(e * (1.0 - s) * c0) * T1 ** (s - 1.0)
    )
    C = hardy_constant(e)
    return InequalityReport.evaluate(
        "hardy_power_family",
        lhs_p + lhs_tail,
        C * (rhs_p + rhs_tail),
        tol,
        err,
        delta=delta,
        prefix_ratio=lhs_p / (C * rhs_p),
    )


def hilbert_kernel_tail(m: float, e: float, N: int) -> float:
    """Bound on sum_{n > N} m^(1/e) / (n^(1/e) (m + n)) by int_N^inf m^(1/e) t^(-1-1/e) dt."""
    return e * m ** (1.0 / e) * N ** (-1.0 / e)


def hilbert_kernel_bound(
    m: float, e: ExponentValue, N: int, tol: float = DEFAULT_REL_TOL
) -> InequalityReport:
    """Tail-corrected sum_n m^(1/e) / (n^(1/e)(m+n)) against pi / sin(pi/e).

    ``lhs`` is an upper enclosure of the full series (partial sum plus tail
    bound), so ``holds`` certifies the infinite inequality.
    """
    e = _open_exponent(e)
    if not m > 0:
        raise ArgError("m must be positive")
    if N < 1:
        raise ArgError("N must be >= 1")
    partial = K.hilbert_kernel_partial(m, e, N)
    tail = hilbert_kernel_tail(m, e, N)
    return InequalityReport.evaluate(
        "hilbert_kernel", partial + tail, hilbert_constant(e), tol, partial=partial, tail=tail
    )


def hilbert(a, b, e: ExponentValue, tol: float = DEFAULT_REL_TOL) -> InequalityReport:
    """sum_{m,n} a_m b_n / (m+n) <= pi/sin(pi/e) ||a||_e ||b||_q."""
    e = _open_exponent(e)
    q = conjugate_exponent(e)
    av, bv = _entries(a), _entries(b)
    if np.any(av < 0) or np.any(bv < 0):
        raise PositivityError("Hilbert's inequality needs nonnegative sequences")
    if av.size * bv.size > HILBERT_MAX_TERMS:
        raise SizeError(f"double sum of {av.size} x {bv.size} terms exceeds {HILBERT_MAX_TERMS}")
    lhs = K.hilbert_double_sum(av, bv)
    rhs = hilbert_constant(e) * scaled_norm(av, e) * scaled_norm(bv, q)
    return InequalityReport.evaluate("hilbert", lhs, rhs, tol)


@dataclass(frozen=True)
class PartialFraction:
    approximation: float
    truth: float
    abs_error: float
    remainder_bound: float


def cosecant_partial_fraction(z: float, N: int) -> PartialFraction:
    """1/z + sum_{n<=N} (-1)^n (1/(z+n) + 1/(z-n)) against pi / sin(pi z)."""
    if not 0.0 < z < 1.0:
        raise ArgError("z must lie in (0, 1)")
    n = np.arange(1, N + 1, dtype=np.float64)
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    terms = sign * (2.0 * z / (z * z - n * n))
    approx = math.fsum([1.0 / z, *terms.tolist()])
    truth = math.pi / math.sin(math.pi * z)
    bound = 2.0 * z / ((N + 1) ** 2 - z * z)
    return PartialFraction(approx, truth, abs(approx - truth), bound)


def tangent_lemma_check(
    a: float, b: float, t: float, e: ExponentValue, tol: float = DEFAULT_REL_TOL
) -> InequalityReport:
    """a^e + e t b a^(e-1) <= (a + t b)^e for a, b, t >= 0.

    At a = 0 the linear term is taken as 0 (its limit for e > 1).
    """
    e = as_exponent(e)
    if e is INF:
        raise ArgError("tangent lemma needs a finite exponent")
    if min(a, b, t) < 0:
        raise PositivityError("a, b, t must be nonnegative")
    linear = 0.0 if a == 0.0 else e * t * b * a ** (e - 1.0)
    lhs = a**e + linear
    rhs = (a + t * b) ** e
    return InequalityReport.evaluate("tangent_lemma", lhs, rhs, tol)
