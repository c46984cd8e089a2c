"""Weighted sequence spaces: norms, limits, embedding, duality, density.

Entries are stored already weighted (``omega(alpha_k, beta_k) * x_k``), see
:func:`theta_norms.gt_weighting.weights_from_form`.  An infinite sequence is
a finite prefix plus an optional monotone envelope ``|x_n| <= c n^(-s)``
for every index past the prefix; norms then come back as enclosures
``(value, error)`` with the true norm in ``[value, value + error]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import _kernels as K
from .errors import ArgError, InconsistencyError, ShapeError, TailError
from .exponent import INF, ExponentValue, as_exponent, conjugate_exponent
from .report import DEFAULT_REL_TOL, InequalityReport

DUAL_TOL = 1e-9


@dataclass(frozen=True)
class PowerDecay:
    c: float
    s: float

    def __post_init__(self):
        if not (self.c > 0 and math.isfinite(self.c)):
            raise ArgError(f"envelope constant must be positive, got {self.c!r}")
        # s = 1 is admitted: the e-th power tail still converges for e > 1
        if not self.s >= 1:
            raise TailError(f"envelope exponent must be >= 1, got {self.s!r}")

    def bound(self, n: float) -> float:
        return self.c * n ** (-self.s)

    def power_tail(self, N: int, e: float) -> float:
        """Integral bound on sum_{n > N} (c n^-s)^e."""
        es = e * self.s
        if not es > 1.0:
            raise TailError(f"envelope c n^-{self.s} is not e-summable for e = {e!r}")
        if N <= 0:
            # sum from n = 1: first term plus the integral from 1
            return self.c**e * (1.0 + 1.0 / (es - 1.0))
        return self.c**e * N ** (1.0 - es) / (es - 1.0)


@dataclass(frozen=True)
class WeightedSequence:
    entries: np.ndarray
    tail: PowerDecay | None = None

    def __post_init__(self):
        x = np.array(self.entries, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(x)):
            raise ArgError("sequence entries must be finite")
        if self.tail is not None and x.size:
            N = x.size
            if abs(x[-1]) > self.tail.bound(N) * (1.0 + 1e-12):
                raise TailError(
                    f"last stored entry |x_{N}| = {abs(x[-1])!r} exceeds the envelope "
                    f"{self.tail.bound(N)!r}"
                )
        x.setflags(write=False)
        object.__setattr__(self, "entries", x)

    def __len__(self) -> int:
        return self.entries.size

    def scaled(self, c: float) -> "WeightedSequence":
        tail = None
        if self.tail is not None and c != 0:
            tail = PowerDecay(abs(c) * self.tail.c, self.tail.s)
        return WeightedSequence(c * self.entries, tail)

    @classmethod
    def from_weights(cls, weights, xs, tail: PowerDecay | None = None) -> "WeightedSequence":
        return cls(np.asarray(weights, dtype=float) * np.asarray(xs, dtype=float), tail)


def as_sequence(x) -> WeightedSequence:
    return x if isinstance(x, WeightedSequence) else WeightedSequence(x)


class NormEnclosure(NamedTuple):
    value: float
    error: float

    @property
    def upper(self) -> float:
        return self.value + self.error


def scaled_norm(x: np.ndarray, e: float, weights: np.ndarray | None = None) -> float:
    """(sum w |x|^e)^(1/e) evaluated as m * (sum w (|x|/m)^e)^(1/e), m = max|x|.

    The largest term is exactly 1 after scaling, so the finite sandwich
    max|x| <= ||x||_e <= N^(1/e) max|x| holds in floating point.
    """
    m = K.max_abs(x)
    if m == 0.0:
        return 0.0
    y = np.asarray(x, dtype=np.float64) / m
    s = K.power_sum(y, e) if weights is None else K.weighted_power_sum(y, weights, e)
    return m * s if e == 1.0 else m * s ** (1.0 / e)


def seq_norm(x, e: ExponentValue) -> NormEnclosure:
    x = as_sequence(x)
    e = as_exponent(e)
    entries = x.entries
    N = entries.size
    if e is INF:
        value = K.max_abs(entries) if N else 0.0
        err = 0.0
        if x.tail is not None:
            err = max(0.0, x.tail.bound(N + 1) - value)
        return NormEnclosure(value, err)
    value = scaled_norm(entries, e) if N else 0.0
    if x.tail is None:
        return NormEnclosure(value, 0.0)
    tail = x.tail.power_tail(N, e)
    upper = (value**e + tail) ** (1.0 / e)
    return NormEnclosure(value, max(0.0, upper - value))


def norm_limit_profile(x, exponents: Sequence[float]) -> list[tuple[float, float]]:
    """Norms at increasing finite exponents; they decrease toward the sup norm."""
    es = [float(as_exponent(e)) if as_exponent(e) is not INF else None for e in exponents]
    if any(e is None for e in es):
        raise ArgError("profile exponents must be finite")
    if any(b <= a for a, b in zip(es, es[1:])):
        raise ArgError("profile exponents must be strictly increasing")
    x = as_sequence(x)
    return [(e, seq_norm(x, e).value) for e in es]


def sandwich_bounds(x, e: float) -> tuple[float, float]:
    """(||x||_inf, N^(1/e) ||x||_inf) for the stored prefix."""
    x = as_sequence(x)
    m = K.max_abs(x.entries) if len(x) else 0.0
    return m, len(x) ** (1.0 / e) * m


def embedding_check(x, p: ExponentValue, q: ExponentValue, tol: float = DEFAULT_REL_TOL) -> InequalityReport:
    """||x||_q <= ||x||_p for p < q (finite prefix)."""
    p = as_exponent(p)
    q = as_exponent(q)
    if p is INF or q is INF:
        raise ArgError("embedding check needs finite exponents")
    if not p < q:
        raise ArgError(f"need p < q, got p={p!r}, q={q!r}")
    x = as_sequence(x)
    lhs = seq_norm(x, q)
    rhs = seq_norm(x, p)
    return InequalityReport.evaluate("embedding", lhs.value, rhs.value, tol, lhs.error)


def counterexample_sequence(p: ExponentValue, N: int) -> WeightedSequence:
    """Prefix of x_n = n^(-1/p): in l_q for q > p but not in l_p."""
    p = as_exponent(p)
    if p is INF:
        raise ArgError("counterexample needs a finite exponent")
    if N < 1:
        raise ArgError("N must be >= 1")
    n = np.arange(1, N + 1, dtype=np.float64)
    return WeightedSequence(n ** (-1.0 / p))


@dataclass
class DoublingProfile:
    sizes: list[int]
    power_sums: list[float]
    increments: list[float]
    divergent: bool


def doubling_profile(
    make_prefix: Callable[[int], np.ndarray],
    e: float,
    n0: int = 1000,
    doublings: int = 4,
    cauchy_tol: float = 1e-3,
) -> DoublingProfile:
    """Partial sums of |x_n|^e at n0, 2 n0, ..., 2^doublings n0.

    Reported divergent unless every increment between successive sizes is
    below ``cauchy_tol``.
    """
    sizes = [n0 * 2**k for k in range(doublings + 1)]
    sums = [K.power_sum(np.asarray(make_prefix(N), dtype=np.float64), e) for N in sizes]
    incs = [b - a for a, b in zip(sums, sums[1:])]
    return DoublingProfile(sizes, sums, incs, any(abs(d) >= cauchy_tol for d in incs))


def dual_norm_evaluations(b, p: ExponentValue) -> tuple[float, float]:
    """(formula ||b||_q, value of x -> sum b_k x_k at the extremal unit vector)."""
    b = np.asarray(b, dtype=np.float64).reshape(-1)
    p = as_exponent(p)
    if p is INF:
        raise ArgError("the dual of the sup-norm space is not a sequence space")
    if p == 1.0:
        m = K.max_abs(b) if b.size else 0.0
        if m == 0.0:
            return 0.0, 0.0
        # extremal: the unit vector at an index attaining max |b_k|, signed
        k = int(np.argmax(np.abs(b)))
        return m, abs(float(b[k]))
    q = conjugate_exponent(p)
    formula = scaled_norm(b, q) if b.size else 0.0
    if formula == 0.0:
        return 0.0, 0.0
    # xi_k = |b_k|^q / b_k, computed on b / ||b||_q to stay in range
    bn = b / formula
    xi = np.zeros_like(bn)
    nz = bn != 0.0
    xi[nz] = np.abs(bn[nz]) ** q / bn[nz]
    xi_norm = scaled_norm(xi, p)
    extremal = float(bn @ xi) / xi_norm * formula
    return formula, extremal


def random_direction_sup(b, p: ExponentValue, directions: np.ndarray):
    """max |sum b_k x_k| over the given directions normalized to the l_p unit sphere.

    A lower bound for the dual norm; ``directions`` has one direction per row.
    A 2-D ``b`` holds one functional per row and returns one sup per row,
    normalizing the directions only once.
    """
    B = np.asarray(b, dtype=np.float64)
    single = B.ndim <= 1
    B = B.reshape(1, -1) if single else B
    p = as_exponent(p)
    D = np.atleast_2d(np.asarray(directions, dtype=np.float64))
    if D.shape[1] != B.shape[1]:
        raise ShapeError(f"directions have {D.shape[1]} coordinates, b has {B.shape[1]}")
    A = np.abs(D)
    m = A.max(axis=1)
    keep = m > 0
    D, A, m = D[keep], A[keep], m[keep]
    if not m.size:
        out = np.zeros(B.shape[0])
    else:
        if p is INF:
            norms = m
        else:
            norms = m * ((A / m[:, None]) ** p).sum(axis=1) ** (1.0 / p)
        U = D / norms[:, None]
        out = np.abs(U @ B.T).max(axis=0)
    return float(out[0]) if single else out


def dual_functional_norm(b, p: ExponentValue) -> float:
    formula, extremal = dual_norm_evaluations(b, p)
    if abs(formula - extremal) > DUAL_TOL * max(formula, abs(extremal)):
        raise InconsistencyError(
            f"dual norm formula {formula!r} disagrees with extremal evaluation {extremal!r}"
        )
    return formula


@dataclass
class DyadicApproximation:
    values: np.ndarray
    denominator_log2: int
    distance_bound: float

    def as_fractions(self) -> list[Fraction]:
        return [Fraction(float(v)) for v in self.values]


def _dyadic_round(v: float, k: int) -> float:
    if Fraction(v).denominator <= (1 << k):
        return v
    return math.ldexp(round(math.ldexp(v, k)), -k)


def rational_approximation(x, p: ExponentValue, eps: float) -> DyadicApproximation:
    """Finitely supported dyadic vector within ``eps`` of ``x`` in l_p.

    Keeps the first n entries, where the dropped mass (stored remainder plus
    the envelope bound) is below eps^p / 2, and rounds each kept entry to a
    multiple of 2^-k with error below eps / 2^(n/p).
    """
    p = as_exponent(p)
    if p is INF:
        raise ArgError("sup-norm sequence space is not separable")
    if not eps > 0:
        raise ArgError("eps must be positive")
    x = as_sequence(x)
    entries = x.entries
    N = entries.size
    budget = eps**p / 2.0
    if x.tail is None:
        n = N
        dropped = 0.0
    else:
        tail = x.tail.power_tail(N, p)
        if tail >= budget:
            raise TailError(
                f"envelope tail {tail:.3g} past the stored prefix exceeds eps^p/2 = {budget:.3g}; "
                "store a longer prefix"
            )
        # suffix[n] = sum_{k >= n} |x_k|^p over the stored prefix
        powers = np.abs(entries) ** p
        suffix = np.concatenate([np.cumsum(powers[::-1])[::-1], [0.0]])
        n = int(np.nonzero(suffix + tail < budget)[0][0])
        dropped = float(suffix[n]) + tail
    k = max(0, math.ceil(n / p - math.log2(eps)) + 1)
    while math.ldexp(1.0, -k - 1) >= eps / 2.0 ** (n / p):
        k += 1
    values = np.array([_dyadic_round(float(v), k) for v in entries[:n]])
    kept = K.power_sum(entries[:n] - values, p) if n else 0.0
    distance = (kept + dropped) ** (1.0 / p)
    if not distance < eps:
        raise InconsistencyError(f"dyadic approximation distance {distance!r} >= eps {eps!r}")
    return DyadicApproximation(values, k, distance)


def sup_distance(x, y) -> float:
    """max |x_k - y_k| over the common stored prefix."""
    a = as_sequence(x).entries
    b = as_sequence(y).entries
    n = min(a.size, b.size)
    return K.max_abs(a[:n] - b[:n]) if n else 0.0


def diagonal_separator(candidates: Sequence, n: int) -> WeightedSequence:
    """A bounded sequence at sup-distance >= 1 from each of ``n`` candidates."""
    cands = [as_sequence(c) for c in candidates]
    if len(cands) != n:
        raise ShapeError(f"expected {n} candidates, got {len(cands)}")
    out = np.empty(n)
    for k, cand in enumerate(cands):
        if len(cand) < n:
            raise ShapeError(f"candidate {k} has prefix length {len(cand)} < {n}")
        c = float(cand.entries[k])
        if abs(c) >= 1.0:
            out[k] = 0.0
        else:
            v = c + 1.0
            # c + 1 can round so that (c + 1) - c lands one ulp below 1
            while v - c < 1.0:
                v = math.nextafter(v, math.inf)
            out[k] = v
    return WeightedSequence(out)
