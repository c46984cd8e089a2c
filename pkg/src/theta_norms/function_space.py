"""Norms and inequalities for grid-sampled functions on discrete measures.

A measure is a finite list of nodes with nonnegative weights: either a
quadrature rule standing in for Lebesgue measure on an interval, or the
counting measure.  Functions equal almost everywhere are, on such a model,
simply equal sample vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import _kernels as K
from .errors import (
    ArgError,
    NonUniformGridError,
    NormOverflowError,
    PositivityError,
    ShapeError,
    ZeroFunctionError,
)
from .exponent import INF, ExponentValue, as_exponent, conjugate_exponent
from .report import DEFAULT_REL_TOL, InequalityReport
from .sequence_space import as_sequence, scaled_norm, seq_norm

UNIFORM_RTOL = 1e-9


@dataclass(frozen=True)
class DiscreteMeasureSpace:
    kind: str
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if self.kind not in ("quadrature", "counting"):
            raise ArgError(f"measure kind must be 'quadrature' or 'counting', got {self.kind!r}")
        nodes = np.array(self.nodes, dtype=np.float64).reshape(-1)
        weights = np.array(self.weights, dtype=np.float64).reshape(-1)
        if nodes.shape != weights.shape:
            raise ShapeError(f"{nodes.size} nodes but {weights.size} weights")
        if not (np.all(np.isfinite(nodes)) and np.all(np.isfinite(weights))):
            raise ArgError("nodes and weights must be finite")
        if np.any(weights < 0):
            raise ArgError("weights must be nonnegative")
        if self.kind == "quadrature" and np.any(np.diff(nodes) <= 0):
            raise ArgError("quadrature nodes must be strictly increasing")
        if self.kind == "counting" and np.any(weights != 1.0):
            raise ArgError("counting measure has unit weights")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return self.nodes.size

    @property
    def total_mass(self) -> float:
        return math.fsum(self.weights.tolist())

    @property
    def is_uniform(self) -> bool:
        n = len(self)
        if self.kind != "quadrature" or n < 2:
            return self.kind == "quadrature"
        h = np.diff(self.nodes)
        return bool(
            np.all(np.abs(h - h[0]) <= UNIFORM_RTOL * h[0])
            and np.all(np.abs(self.weights - h[0]) <= UNIFORM_RTOL * h[0])
        )

    @classmethod
    def uniform(cls, a: float, b: float, n: int) -> "DiscreteMeasureSpace":
        """Midpoint rule with ``n`` equal cells on [a, b]."""
        if n < 1 or not b > a:
            raise ArgError("need n >= 1 and b > a")
        h = (b - a) / n
        return cls("quadrature", a + h * (np.arange(n) + 0.5), np.full(n, h))

    @classmethod
    def counting(cls, n: int) -> "DiscreteMeasureSpace":
        return cls("counting", np.arange(n, dtype=np.float64), np.ones(n))

    @classmethod
    def graded(cls, levels: int, cells_per_level: int = 8, b: float = 1.0) -> "DiscreteMeasureSpace":
        """Midpoint rule on (0, b] refined geometrically toward 0.

        Dyadic shells (b 2^-k-1, b 2^-k] for k < ``levels`` are each cut into
        ``cells_per_level`` equal cells; the innermost (0, b 2^-levels] is a
        single cell.
        """
        if levels < 0 or cells_per_level < 1:
            raise ArgError("need levels >= 0 and cells_per_level >= 1")
        edges = [0.0]
        for k in range(levels - 1, -1, -1):
            edges.extend(np.linspace(b * 2.0 ** (-k - 1), b * 2.0**-k, cells_per_level + 1)[:-1].tolist())
        edges = np.array(edges + [b])
        return cls("quadrature", 0.5 * (edges[:-1] + edges[1:]), np.diff(edges))


@dataclass(frozen=True)
class GridFunction:
    samples: np.ndarray

    def __post_init__(self):
        s = np.array(self.samples, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(s)):
            raise ArgError("samples must be finite")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    def __len__(self) -> int:
        return self.samples.size

    @classmethod
    def sample(cls, fn: Callable[[np.ndarray], np.ndarray], mu: DiscreteMeasureSpace) -> "GridFunction":
        return cls(np.broadcast_to(np.asarray(fn(mu.nodes), dtype=np.float64), mu.nodes.shape))


def _samples(f, mu: DiscreteMeasureSpace) -> np.ndarray:
    s = f.samples if isinstance(f, GridFunction) else GridFunction(f).samples
    if s.size != len(mu):
        raise ShapeError(f"function has {s.size} samples but the measure has {len(mu)} nodes")
    return s


def _finite(*values: float) -> None:
    if not all(math.isfinite(v) for v in values):
        raise NormOverflowError("power integrals overflowed; rescale the function")


def _ess_sup(s: np.ndarray, w: np.ndarray) -> float:
    pos = w > 0
    return K.max_abs(s[pos]) if np.any(pos) else 0.0


def f_norm(f, mu: DiscreteMeasureSpace, e: ExponentValue) -> float:
    """(sum w_i |f_i|^e)^(1/e); for INF the max over positive-weight nodes."""
    s = _samples(f, mu)
    e = as_exponent(e)
    if e is INF:
        return _ess_sup(s, mu.weights)
    if s.size == 0:
        return 0.0
    return scaled_norm(s, e, mu.weights)


def _integral(s: np.ndarray, w: np.ndarray, e: float) -> float:
    return K.weighted_power_sum(s, w, e)


def inclusion_check(
    f, mu: DiscreteMeasureSpace, p: ExponentValue, q: ExponentValue, tol: float = DEFAULT_REL_TOL
) -> InequalityReport:
    """||f||_p^p <= mu(X) + ||f||_q^q, splitting X at |f| = 1.

    For q = INF the bound is ||f||_p <= ||f||_inf mu(X)^(1/p).
    """
    p = as_exponent(p)
    q = as_exponent(q)
    if p is INF:
        raise ArgError("inclusion check needs a finite p")
    if q is not INF and p > q:
        raise ArgError(f"need p <= q, got p={p!r}, q={q!r}")
    s = _samples(f, mu)
    mass = mu.total_mass
    if q is INF:
        sup = _ess_sup(s, mu.weights)
        return InequalityReport.evaluate(
            "inclusion", f_norm(s, mu, p), sup * mass ** (1.0 / p), tol, mass=mass
        )
    ip = _integral(s, mu.weights, p)
    iq = _integral(s, mu.weights, q)
    _finite(ip, iq)
    return InequalityReport.evaluate("inclusion", ip, mass + iq, tol, mass=mass, power_q=iq)


@dataclass
class RefinementGrowth:
    levels: list[int]
    masses: list[float]
    factors: list[float]
    divergent: bool


def refinement_growth(
    fn: Callable[[np.ndarray], np.ndarray],
    e: float,
    base_levels: int = 4,
    refinements: int = 3,
    levels_per_refinement: int = 2,
    cells_per_level: int = 8,
    factor: float = 1.5,
) -> RefinementGrowth:
    """Track int |f|^e on graded grids pushed toward a singularity at 0.

    Divergent when the mass grows by at least ``factor`` under every one of
    the ``refinements`` successive refinements.
    """
    levels = [base_levels + k * levels_per_refinement for k in range(refinements + 1)]
    masses = []
    for L in levels:
        mu = DiscreteMeasureSpace.graded(L, cells_per_level)
        masses.append(_integral(_samples(GridFunction.sample(fn, mu), mu), mu.weights, e))
    factors = [b / a if a > 0 else math.inf for a, b in zip(masses, masses[1:])]
    return RefinementGrowth(levels, masses, factors, all(r >= factor for r in factors))


def counting_measure_equiv(x, e: ExponentValue) -> tuple[float, float]:
    """(norm under counting measure, sequence norm) of the same finite data."""
    s = as_sequence(x).entries
    mu = DiscreteMeasureSpace.counting(s.size)
    return f_norm(GridFunction(s), mu, e), seq_norm(s, e).value


def holder_fn(f, g, mu: DiscreteMeasureSpace, e: ExponentValue, tol: float = DEFAULT_REL_TOL) -> InequalityReport:
    """int |f g| <= ||f||_e ||g||_q; e = 1 pairs with the essential sup."""
    e = as_exponent(e)
    a, b = _samples(f, mu), _samples(g, mu)
    w = mu.weights
    if e is INF or e == 1.0:
        lhs = _integral(a * b, w, 1.0)
        rhs = f_norm(a, mu, e) * f_norm(b, mu, conjugate_exponent(e) if e is INF else INF)
        return InequalityReport.evaluate("holder_fn", lhs, rhs, tol)
    q = conjugate_exponent(e)
    s1, sf, sg = K.holder_sums(a, b, w, e, q)
    _finite(s1, sf, sg)
    return InequalityReport.evaluate("holder_fn", s1, sf ** (1.0 / e) * sg ** (1.0 / q), tol)


def holder_equality_witness(f, e: float) -> GridFunction:
    """g = |f|^(e-1), which turns the Hoelder bound into an equality."""
    s = f.samples if isinstance(f, GridFunction) else GridFunction(f).samples
    return GridFunction(np.abs(s) ** (float(e) - 1.0))


def minkowski_fn(f, g, mu: DiscreteMeasureSpace, e: ExponentValue, tol: float = DEFAULT_REL_TOL) -> InequalityReport:
    e = as_exponent(e)
    a, b = _samples(f, mu), _samples(g, mu)
    if e is INF:
        w = mu.weights
        return InequalityReport.evaluate(
            "minkowski_fn", _ess_sup(a + b, w), _ess_sup(a, w) + _ess_sup(b, w), tol
        )
    sfg, sf, sg = K.minkowski_sums(a, b, mu.weights, e)
    _finite(sfg, sf, sg)
    inv = 1.0 / e
    return InequalityReport.evaluate("minkowski_fn", sfg**inv, sf**inv + sg**inv, tol)


def interpolation_check(F, G, mu: DiscreteMeasureSpace, t: float, tol: float = DEFAULT_REL_TOL) -> InequalityReport:
    """int F^t G^(1-t) <= (int F)^t (int G)^(1-t) for F, G >= 0."""
    if not 0.0 < t < 1.0:
        raise ArgError("t must lie in (0, 1)")
    a, b = _samples(F, mu), _samples(G, mu)
    if np.any(a < 0) or np.any(b < 0):
        raise PositivityError("interpolation check needs nonnegative functions")
    w = mu.weights
    lhs = _integral(a**t * b ** (1.0 - t), w, 1.0)
    ia, ib = _integral(a, w, 1.0), _integral(b, w, 1.0)
    _finite(lhs, ia, ib)
    return InequalityReport.evaluate("interpolation", lhs, ia**t * ib ** (1.0 - t), tol)


class DualCharacterization(NamedTuple):
    formula_norm: float
    sup_estimate: float
    extremal_ratio: float


def _row_norms(G: np.ndarray, w: np.ndarray, e: ExponentValue) -> np.ndarray:
    A = np.abs(G)
    m = A.max(axis=1)
    if e is INF:
        return A[:, w > 0].max(axis=1) if np.any(w > 0) else np.zeros(G.shape[0])
    safe = np.where(m > 0, m, 1.0)
    return m * (((A / safe[:, None]) ** e) @ w) ** (1.0 / e)


def dual_norm_characterization(
    f, mu: DiscreteMeasureSpace, e: ExponentValue, trials: int = 1000, rng: np.random.Generator | None = None
) -> DualCharacterization:
    """||f||_e three ways: the formula, ||f g||_1 / ||g||_q at the extremal
    g = c |f|^(e-1), and the best of ``trials`` random g (a lower bound).
    """
    e = as_exponent(e)
    if e is INF:
        raise ArgError("dual characterization needs a finite exponent")
    s = _samples(f, mu)
    w = mu.weights
    formula = f_norm(s, mu, e)
    if formula == 0.0:
        raise ZeroFunctionError("the extremal function is undefined for f = 0")
    q = INF if e == 1.0 else conjugate_exponent(e)
    # work with f / ||f|| so |f|^(e-1) stays in range; the ratio is homogeneous
    u = s / formula
    g = np.abs(u) ** (e - 1.0)
    extremal = _integral(u * g, w, 1.0) / f_norm(g, mu, q) * formula
    if rng is None:
        rng = np.random.default_rng(0)
    sup = 0.0
    for start in range(0, trials, 4096):
        G = rng.standard_normal((min(4096, trials - start), s.size))
        vals = (np.abs(G) @ (w * np.abs(s))) / _row_norms(G, w, q)
        sup = max(sup, float(np.max(vals)))
    return DualCharacterization(formula, sup, extremal)


def _grid2(F, muX: DiscreteMeasureSpace, muY: DiscreteMeasureSpace) -> np.ndarray:
    A = np.asarray(F, dtype=np.float64)
    if A.shape != (len(muX), len(muY)):
        raise ShapeError(f"array shape {A.shape} does not match measures ({len(muX)}, {len(muY)})")
    if not np.all(np.isfinite(A)):
        raise ArgError("samples must be finite")
    return A


def integral_minkowski(
    F, muX: DiscreteMeasureSpace, muY: DiscreteMeasureSpace, e: ExponentValue, tol: float = DEFAULT_REL_TOL
) -> InequalityReport:
    """|| int_Y F(., y) dy ||_{L_e(X)} <= int_Y ||F(., y)||_{L_e(X)} dy."""
    e = as_exponent(e)
    if e is INF:
        raise ArgError("integral Minkowski check needs a finite exponent")
    A = _grid2(F, muX, muY)
    inner = A @ muY.weights
    lhs = f_norm(inner, muX, e)
    col = _row_norms(A.T, muX.weights, e)
    rhs = float(col @ muY.weights)
    _finite(lhs, rhs)
    return InequalityReport.evaluate("integral_minkowski", lhs, rhs, tol)


def convolution_young(k, f, mu: DiscreteMeasureSpace, e: ExponentValue, tol: float = DEFAULT_REL_TOL) -> InequalityReport:
    """||k * f||_e <= ||k||_1 ||f||_e for circular convolution on a uniform grid."""
    if not mu.is_uniform:
        raise NonUniformGridError("convolution needs a uniformly spaced quadrature grid")
    e = as_exponent(e)
    kv, fv = _samples(k, mu), _samples(f, mu)
    h = float(mu.weights[0])
    conv = K.circular_convolve(kv, fv, h)
    lhs = f_norm(conv, mu, e)
    rhs = f_norm(kv, mu, 1.0) * f_norm(fv, mu, e)
    return InequalityReport.evaluate("convolution_young", lhs, rhs, tol)


def fn_norm_limit(f, mu: DiscreteMeasureSpace, exponents: Sequence[float]) -> list[tuple[float, float]]:
    es = [as_exponent(e) for e in exponents]
    if any(e is INF for e in es):
        raise ArgError("profile exponents must be finite")
    if any(b <= a for a, b in zip(es, es[1:])):
        raise ArgError("profile exponents must be strictly increasing")
    s = _samples(f, mu)
    return [(e, f_norm(s, mu, e)) for e in es]


def limit_interpolation_bound(f, mu: DiscreteMeasureSpace, e: float) -> float:
    """||f||_inf^(1 - 1/e) ||f||_1^(1/e), an upper bound for ||f||_e."""
    s = _samples(f, mu)
    return f_norm(s, mu, INF) ** (1.0 - 1.0 / e) * f_norm(s, mu, 1.0) ** (1.0 / e)


# Gamma by composite Gauss-Legendre; the Q_n vs Q_2n gap is the error estimate
_GL_LOW = np.polynomial.legendre.leggauss(16)
_GL_HIGH = np.polynomial.legendre.leggauss(32)
_GAMMA_HEAD = 1e-13


class GammaEnclosure(NamedTuple):
    value: float
    error: float


def _panel_rule(edges: np.ndarray, rule, fn) -> np.ndarray:
    x, w = rule
    a, b = edges[:-1, None], edges[1:, None]
    half = 0.5 * (b - a)
    return (half * fn(a + half * (x[None, :] + 1.0)) * w[None, :]).sum(axis=1)


@lru_cache(maxsize=4096)
def gamma_quadrature(z: float) -> GammaEnclosure:
    """Gamma(z) = int_0^inf e^-s s^(z-1) ds with a rigorous-style error budget.

    (0, 1] uses dyadic panels down to a cutoff where the dropped head is
    below 1e-13; [1, T] uses unit panels with T = max(50, 10 + 5 z), whose
    tail is at most 2 e^-T T^(z-1).
    """
    z = float(z)
    if not z > 0:
        raise PositivityError("Gamma quadrature needs z > 0")
    fn = lambda s: np.exp(-s) * s ** (z - 1.0)  # noqa: E731
    # int_0^delta s^(z-1) ds = delta^z / z bounds the dropped head
    k_head = max(1, math.ceil(-math.log2(_GAMMA_HEAD * z) / z))
    head = 2.0 ** (-k_head * z) / z
    low = np.ldexp(1.0, -np.arange(k_head, -1, -1))
    T = max(50.0, 10.0 + 5.0 * z)
    high = np.arange(1.0, math.ceil(T) + 1.0)
    edges = np.concatenate([low, high[1:]])
    coarse = _panel_rule(edges, _GL_LOW, fn)
    fine = _panel_rule(edges, _GL_HIGH, fn)
    value = math.fsum(fine.tolist())
    tail = 2.0 * math.exp(-T) * T ** (z - 1.0)
    quad = math.fsum(np.abs(fine - coarse).tolist())
    rounding = 64.0 * np.finfo(float).eps * value
    return GammaEnclosure(value, quad + head + tail + rounding)


def gamma_log_convexity(x: float, y: float, t: float, tol: float = DEFAULT_REL_TOL) -> InequalityReport:
    """Gamma(t x + (1-t) y) <= Gamma(x)^t Gamma(y)^(1-t), quadrature errors budgeted."""
    if not (x > 0 and y > 0):
        raise PositivityError("Gamma log-convexity needs x, y > 0")
    if not 0.0 < t < 1.0:
        raise ArgError("t must lie in (0, 1)")
    gm = gamma_quadrature(t * x + (1.0 - t) * y)
    gx, gy = gamma_quadrature(x), gamma_quadrature(y)
    rhs = gx.value**t * gy.value ** (1.0 - t)
    # first-order propagation of the relative errors through the power product
    rhs_err = rhs * (t * gx.error / gx.value + (1.0 - t) * gy.error / gy.value)
    budget = gm.error + rhs_err
    return InequalityReport.evaluate("gamma_log_convexity", gm.value, rhs, tol, budget)
