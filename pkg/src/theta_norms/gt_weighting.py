"""Finite bilinear forms on C(S) x C(T) and their Grothendieck factorization.

With S, T finite, C(S) is R^s under the sup norm and a bilinear form is
``omega(a, b) = a^T M b``.  Probabilities ``lam``, ``mu`` with constant K
satisfy

    |a^T M b| <= K ||omega|| (sum lam a^2)^(1/2) (sum mu b^2)^(1/2)

for all a, b exactly when the largest singular value of
``D_lam^(-1/2) M D_mu^(-1/2)`` is at most ``K ||omega||``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .errors import (
    ArgError,
    ConvergenceWarning,
    InconsistencyError,
    ShapeError,
    SizeError,
    ZeroWeightError,
)
from .report import InequalityReport
from .rng import trial_rng

MAX_DIM = 20
ZERO_WEIGHT = 1e-12
WEIGHT_FLOOR = 1e-9
CERT_TOL = 1e-9
# Schatten-r surrogates walked before the final sigma_max stage
_CONTINUATION = (8.0, 32.0, 128.0, math.inf)
# a stage ends after this many consecutive steps improving by < _STALL_REL
_STALL_ITERS = 8
_STALL_REL = 1e-12


@dataclass(frozen=True)
class BilinearForm:
    M: np.ndarray

    def __post_init__(self):
        M = np.array(self.M, dtype=np.float64)
        if M.ndim == 1:
            M = M[None, :]
        if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
            raise ShapeError(f"bilinear form needs a non-empty 2-D matrix, got shape {M.shape}")
        if not np.all(np.isfinite(M)):
            raise ArgError("bilinear form entries must be finite")
        M.setflags(write=False)
        object.__setattr__(self, "M", M)

    @property
    def shape(self) -> tuple[int, int]:
        return self.M.shape

    def __call__(self, alpha, beta) -> float:
        return float(np.asarray(alpha, dtype=float) @ self.M @ np.asarray(beta, dtype=float))


def _form(form) -> BilinearForm:
    return form if isinstance(form, BilinearForm) else BilinearForm(form)


def probability_vector(weights, name: str = "weights") -> np.ndarray:
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 1 or w.size == 0:
        raise ShapeError(f"{name} must be a non-empty vector")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise ArgError(f"{name} must be finite and nonnegative")
    if abs(w.sum() - 1.0) > 1e-12:
        raise ArgError(f"{name} must sum to 1 (sum = {w.sum()!r})")
    return w


@dataclass
class FactorizationCertificate:
    lam: np.ndarray
    mu: np.ndarray
    K: float
    form_norm: float
    converged: bool = True
    sigma_max: float = 0.0
    iterations: int = 0
    restart: int = 0
    history: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "lambda": [float(v) for v in self.lam],
            "mu": [float(v) for v in self.mu],
            "K": float(self.K),
            "form_norm": float(self.form_norm),
            "converged": bool(self.converged),
        }


def form_sup_norm(form) -> float:
    """||omega|| over the sup-norm unit balls, by exact sign enumeration."""
    M = _form(form).M
    if max(M.shape) > MAX_DIM:
        raise SizeError(f"exact sup norm limited to dimensions <= {MAX_DIM}, got {M.shape}")
    if M.shape[0] > M.shape[1]:
        M = M.T
    return float(K.sign_enum_sup(np.ascontiguousarray(M)))


def weighted_operator(M: np.ndarray, lam: np.ndarray, mu: np.ndarray) -> np.ndarray:
    return M / np.sqrt(lam)[:, None] / np.sqrt(mu)[None, :]


def weighted_sigma_max(form, lam, mu) -> float:
    M = _form(form).M
    s, _, _, _ = K.jacobi_svd(weighted_operator(M, lam, mu))
    return float(s[0])


def gt_bound_check(form, lam, mu, K_const: float, tol: float = CERT_TOL) -> InequalityReport:
    form = _form(form)
    lam = probability_vector(lam, "lambda")
    mu = probability_vector(mu, "mu")
    if lam.shape[0] != form.shape[0] or mu.shape[0] != form.shape[1]:
        raise ShapeError("probability vectors do not match the form's dimensions")
    if lam.min() < ZERO_WEIGHT or mu.min() < ZERO_WEIGHT:
        raise ZeroWeightError("factorization weights must be strictly positive")
    sigma = weighted_sigma_max(form, lam, mu)
    norm = form_sup_norm(form)
    return InequalityReport.evaluate("gt_factorization", sigma, K_const * norm, tol=tol, K=K_const)


def _project_floor_simplex(v: np.ndarray, floor: float) -> np.ndarray:
    """Euclidean projection onto {x >= floor, sum(x) = 1}."""
    n = v.size
    mass = 1.0 - n * floor
    y = v - floor
    u = np.sort(y)[::-1]
    css = np.cumsum(u) - mass
    idx = np.arange(1, n + 1)
    rho = np.nonzero(u - css / idx > 0)[0][-1]
    theta = css[rho] / (rho + 1)
    x = np.maximum(y - theta, 0.0) + floor
    return x / x.sum()


class _Objective:
    """Schatten-r norm (r = inf: sigma_max) of the weighted operator and its gradient."""

    def __init__(self, M: np.ndarray, r: float):
        self.M = M
        self.r = r

    def value(self, lam, mu) -> float:
        sig, _, _, _ = K.jacobi_svd(weighted_operator(self.M, lam, mu))
        return self._combine(sig)

    def _combine(self, sig) -> float:
        if math.isinf(self.r) or sig[0] == 0.0:
            return float(sig[0])
        w = (sig / sig[0]) ** self.r
        return float(sig[0] * w.sum() ** (1.0 / self.r))

    def value_grad(self, lam, mu):
        sig, U, V, _ = K.jacobi_svd(weighted_operator(self.M, lam, mu))
        if math.isinf(self.r) or sig[0] == 0.0:
            coef = np.zeros_like(sig)
            coef[0] = 1.0
        else:
            ratio = sig / sig[0]
            total = (ratio**self.r).sum()
            coef = ratio ** (self.r - 1.0) * total ** (1.0 / self.r - 1.0)
        # d sigma_k / d lam_i = -sigma_k U_ik^2 / (2 lam_i), same shape for mu
        g_lam = -0.5 * (U**2 @ (coef * sig)) / lam
        g_mu = -0.5 * (V**2 @ (coef * sig)) / mu
        return self._combine(sig), g_lam, g_mu


def _descend(obj: _Objective, lam, mu, max_iters: int, tol: float):
    """Projected gradient with backtracking on the product of simplices."""
    f, g_lam, g_mu = obj.value_grad(lam, mu)
    eta = 1.0 / max(1e-12, float(np.sqrt(g_lam @ g_lam + g_mu @ g_mu)))
    pg_norm = math.inf
    stalls = 0
    it = 0
    for it in range(1, max_iters + 1):
        while True:
            lam_new = _project_floor_simplex(lam - eta * g_lam, WEIGHT_FLOOR)
            mu_new = _project_floor_simplex(mu - eta * g_mu, WEIGHT_FLOOR)
            d_lam = lam_new - lam
            d_mu = mu_new - mu
            step_sq = float(d_lam @ d_lam + d_mu @ d_mu)
            f_new = obj.value(lam_new, mu_new)
            model = f + float(g_lam @ d_lam + g_mu @ d_mu) + step_sq / (2.0 * eta)
            if f_new <= model or step_sq == 0.0:
                break
            eta *= 0.5
            if eta < 1e-18:
                break
        pg_norm = math.sqrt(step_sq) / eta if eta > 0 else 0.0
        if f_new > f or step_sq == 0.0:
            # backtracking exhausted: no descent along the (sub)gradient
            return lam, mu, f, it, pg_norm, True
        stalls = stalls + 1 if f - f_new <= _STALL_REL * f else 0
        lam, mu = lam_new, mu_new
        f, g_lam, g_mu = obj.value_grad(lam, mu)
        if pg_norm < tol or stalls >= _STALL_ITERS:
            return lam, mu, f, it, pg_norm, True
        eta *= 2.0
    return lam, mu, f, it, pg_norm, pg_norm < tol


def find_gt_factorization(
    form,
    restarts: int = 4,
    max_iters: int = 400,
    seed: int = 0,
    tol: float = 1e-9,
) -> FactorizationCertificate:
    """Search probabilities minimizing K = sigma_max(D_lam^-1/2 M D_mu^-1/2) / ||omega||.

    Restart 0 starts at the uniform point, the others at seeded Dirichlet
    draws.  The best certificate (lowest K, ties to the lowest restart) is
    re-verified with :func:`gt_bound_check` before it is returned.
    """
    form = _form(form)
    if max(form.shape) > MAX_DIM:
        raise SizeError(f"factorization search limited to dimensions <= {MAX_DIM}")
    if restarts < 1:
        raise ArgError("restarts must be >= 1")
    M = form.M
    s, t = M.shape
    norm = form_sup_norm(form)
    if norm == 0.0:
        lam = np.full(s, 1.0 / s)
        mu = np.full(t, 1.0 / t)
        return FactorizationCertificate(lam, mu, 1.0, 0.0, True, 0.0, 0, 0)

    best = None
    for r in range(restarts):
        if r == 0:
            lam = np.full(s, 1.0 / s)
            mu = np.full(t, 1.0 / t)
        else:
            rng = trial_rng(seed, "gt-restart", r)
            lam = _project_floor_simplex(rng.dirichlet(np.ones(s)), WEIGHT_FLOOR)
            mu = _project_floor_simplex(rng.dirichlet(np.ones(t)), WEIGHT_FLOOR)
        total_iters = 0
        converged = True
        history = []
        for r_exp in _CONTINUATION:
            lam, mu, f, its, pg, conv = _descend(_Objective(M, r_exp), lam, mu, max_iters, tol)
            total_iters += its
            history.append((r_exp, f, its))
            converged = conv
        sigma = weighted_sigma_max(form, lam, mu)
        cert = FactorizationCertificate(
            lam, mu, sigma / norm, norm, converged, sigma, total_iters, r, history
        )
        if best is None or cert.K < best.K:
            best = cert

    if not best.converged:
        warnings.warn(
            f"factorization search hit the iteration cap (K = {best.K:.6g})",
            ConvergenceWarning,
            stacklevel=2,
        )
    check = gt_bound_check(form, best.lam, best.mu, best.K)
    if not check.holds:
        raise InconsistencyError(f"certificate failed re-verification: {check}")
    return best


def weights_from_form(form, alphas, betas) -> np.ndarray:
    """w_k = alpha_k^T M beta_k for each pair, in order."""
    M = _form(form).M
    A = np.atleast_2d(np.asarray(alphas, dtype=np.float64))
    B = np.atleast_2d(np.asarray(betas, dtype=np.float64))
    if A.shape[1] != M.shape[0] or B.shape[1] != M.shape[1] or A.shape[0] != B.shape[0]:
        raise ShapeError(
            f"alphas {A.shape} / betas {B.shape} do not match form {M.shape}"
        )
    return np.einsum("ki,ij,kj->k", A, M, B)


def holder_gt_factor(cert: FactorizationCertificate, alphas, betas) -> np.ndarray:
    """Per-pair factor K^2 ||omega||^2 (sum lam a_k^2)(sum mu b_k^2)."""
    A = np.atleast_2d(np.asarray(alphas, dtype=np.float64))
    B = np.atleast_2d(np.asarray(betas, dtype=np.float64))
    return (cert.K * cert.form_norm) ** 2 * (A**2 @ cert.lam) * (B**2 @ cert.mu)
