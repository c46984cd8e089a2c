import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from theta_norms.errors import ShapeError, SizeError, ZeroWeightError
from theta_norms.gt_weighting import (
    BilinearForm,
    find_gt_factorization,
    form_sup_norm,
    gt_bound_check,
    holder_gt_factor,
    weights_from_form,
)
from theta_norms.inequalities import holder_seq


@pytest.mark.parametrize(
    "M, expected",
    [([[2.0]], 2.0), (np.eye(2), 2.0), ([[1.0, 1.0], [1.0, -1.0]], 2.0)],
)
def test_form_sup_norm_examples(backend, M, expected):
    assert form_sup_norm(M) == expected


def test_form_sup_norm_size_cap():
    with pytest.raises(SizeError):
        form_sup_norm(np.ones((21, 2)))


def test_form_is_read_only():
    form = BilinearForm([[1.0, 2.0]])
    with pytest.raises(ValueError):
        form.M[0, 0] = 5.0
    assert form([1.0], [1.0, 1.0]) == 3.0


def test_bound_check_identity_uniform(backend):
    rep = gt_bound_check(np.eye(2), [0.5, 0.5], [0.5, 0.5], 1.0)
    assert rep.holds
    assert rep.lhs == pytest.approx(2.0, rel=1e-14)


def test_bound_check_one_by_one_equality():
    rep = gt_bound_check([[1.0]], [1.0], [1.0], 1.0)
    assert rep.holds and rep.ratio == 1.0


def test_bound_check_skewed_weights_fail(backend):
    rep = gt_bound_check(np.eye(2), [0.99, 0.01], [0.5, 0.5], 1.0)
    assert not rep.holds
    # sigma_max = max_i 1/sqrt(lam_i mu_i) = 1/sqrt(0.005)
    assert rep.lhs == pytest.approx(1.0 / np.sqrt(0.005), rel=1e-12)


def test_bound_check_zero_weight():
    with pytest.raises(ZeroWeightError):
        gt_bound_check(np.eye(2), [1.0, 0.0], [0.5, 0.5], 2.0)


def test_identity_factorization(backend):
    cert = find_gt_factorization(np.eye(2))
    assert cert.K <= 1 + 1e-6
    np.testing.assert_allclose(cert.lam, [0.5, 0.5], atol=1e-6)
    np.testing.assert_allclose(cert.mu, [0.5, 0.5], atol=1e-6)


def test_one_by_one_factorization():
    cert = find_gt_factorization([[-3.0]])
    assert cert.K == 1.0
    assert cert.lam.tolist() == [1.0] and cert.mu.tolist() == [1.0]


def test_zero_form():
    cert = find_gt_factorization(np.zeros((2, 3)))
    assert cert.form_norm == 0.0


def test_certificate_json_fields():
    cert = find_gt_factorization(np.eye(3))
    assert set(cert.to_json()) == {"lambda", "mu", "K", "form_norm", "converged"}


def _sdp_min_k(M):
    cp = pytest.importorskip("cvxpy")
    s, t = M.shape
    Z = cp.Variable((s + t, s + t), PSD=True)
    prob = cp.Problem(cp.Maximize(cp.sum(cp.multiply(M, Z[:s, s:]))), [cp.diag(Z) == 1])
    prob.solve()
    return prob.value / form_sup_norm(M)


def test_random_three_by_three_against_sdp():
    M = np.random.default_rng(42).uniform(-1, 1, (3, 3))
    cert = find_gt_factorization(M)
    k_opt = _sdp_min_k(M)
    assert cert.K <= 1.79
    # the semidefinite optimum is the true minimum over (lam, mu)
    assert cert.K >= k_opt - 1e-6
    assert cert.K <= k_opt + 1e-3


@pytest.mark.parametrize("seed", range(6))
def test_rectangular_against_sdp(seed):
    rng = np.random.default_rng(100 + seed)
    M = rng.uniform(-1, 1, (int(rng.integers(2, 6)), int(rng.integers(2, 6))))
    cert = find_gt_factorization(M)
    assert cert.K == pytest.approx(_sdp_min_k(M), abs=1e-3)


def test_restarts_are_deterministic():
    M = np.random.default_rng(5).uniform(-1, 1, (4, 4))
    a, b = find_gt_factorization(M, seed=9), find_gt_factorization(M, seed=9)
    assert a.K == b.K and a.restart == b.restart
    np.testing.assert_array_equal(a.lam, b.lam)


def test_iteration_cap_warns():
    M = np.random.default_rng(1).uniform(-1, 1, (5, 5))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        cert = find_gt_factorization(M, restarts=1, max_iters=1)
    assert not cert.converged
    assert any("iteration cap" in str(w.message) for w in caught)


def test_weights_from_form_examples():
    assert weights_from_form([[1.0]], [[1.0]] * 4, [[1.0]] * 4).tolist() == [1.0] * 4
    assert weights_from_form(np.eye(2), [[1.0, 0.0]], [[0.0, 1.0]]).tolist() == [0.0]
    assert weights_from_form(np.eye(2), [[1.0, 1.0]], [[1.0, 1.0]]).tolist() == [2.0]
    with pytest.raises(ShapeError):
        weights_from_form(np.eye(2), [[1.0, 1.0, 1.0]], [[1.0, 1.0]])


@given(st.floats(min_value=-50, max_value=50).filter(lambda c: c != 0))
@settings(max_examples=30, deadline=None)
def test_sup_norm_homogeneity(c):
    M = np.random.default_rng(3).uniform(-1, 1, (4, 5))
    assert form_sup_norm(c * M) == pytest.approx(abs(c) * form_sup_norm(M), rel=1e-13)


@given(
    st.integers(1, 3).flatmap(
        lambda s: st.integers(1, 3).flatmap(
            lambda t: st.lists(st.sampled_from([-1.0, 0.0, 1.0]), min_size=s * t, max_size=s * t).map(
                lambda v: np.array(v).reshape(s, t)
            )
        )
    )
)
@settings(max_examples=40, deadline=None)
def test_small_sign_matrices_below_ceiling(M):
    cert = find_gt_factorization(M)
    assert cert.K <= 1.79
    if cert.form_norm > 0:
        assert gt_bound_check(M, cert.lam, cert.mu, cert.K).holds


def test_weighted_holder_chain_factor():
    # factor recorded for a passing certificate with unit-sup-norm alpha, beta
    rng = np.random.default_rng(11)
    M = rng.uniform(-1, 1, (3, 3))
    cert = find_gt_factorization(M)
    A = rng.choice([-1.0, 1.0], (200, 3))
    B = rng.choice([-1.0, 1.0], (200, 3))
    w = weights_from_form(M, A, B)
    factor = holder_gt_factor(cert, A, B)
    # |omega(alpha, beta)| <= K ||omega|| sqrt(lam.alpha^2) sqrt(mu.beta^2) termwise
    assert np.all(w**2 <= factor * (1 + 1e-9))
    x, y = rng.standard_normal(200), rng.standard_normal(200)
    assert holder_seq(w * x, w * y, 2.0).holds
