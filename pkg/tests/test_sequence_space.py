import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from theta_norms.errors import ArgError, InconsistencyError, ShapeError, TailError
from theta_norms.exponent import INF
from theta_norms.sequence_space import (
    PowerDecay,
    WeightedSequence,
    counterexample_sequence,
    diagonal_separator,
    doubling_profile,
    dual_functional_norm,
    dual_norm_evaluations,
    embedding_check,
    norm_limit_profile,
    random_direction_sup,
    rational_approximation,
    sandwich_bounds,
    seq_norm,
    sup_distance,
)

# sum_{n <= 10^4} n^-2 to 30 digits (mpmath), frozen
ZETA2_PARTIAL_1E4 = 1.64483407184805976980608183331


def test_pythagorean(backend):
    assert seq_norm((3, 4), 2).value == 5.0


@pytest.mark.parametrize("e", [1.0, 1.5, 3.0, 7.0])
def test_all_ones(e):
    assert seq_norm(np.ones(50), e).value == pytest.approx(50 ** (1 / e), rel=1e-14)


def test_zeta_two_with_tail(backend):
    n = np.arange(1, 10001, dtype=float)
    enc = seq_norm(WeightedSequence(1 / n, PowerDecay(1.0, 1.0)), 2)
    assert enc.value == pytest.approx(math.sqrt(ZETA2_PARTIAL_1E4), rel=1e-14)
    assert enc.value <= math.pi / math.sqrt(6) <= enc.upper
    assert enc.error < 1e-4


def test_sup_norm_with_tail_envelope():
    x = WeightedSequence([0.1, 0.05], PowerDecay(1.0, 2.0))
    enc = seq_norm(x, INF)
    # envelope allows |x_3| up to 1/9 > 0.1
    assert enc.value == 0.1
    assert enc.upper == pytest.approx(1 / 9)


def test_envelope_validation():
    with pytest.raises(TailError):
        WeightedSequence([1.0, 1.0], PowerDecay(1.0, 2.0))
    with pytest.raises(TailError):
        PowerDecay(1.0, 0.5)
    with pytest.raises(TailError):
        seq_norm(WeightedSequence([1.0], PowerDecay(1.0, 1.0)), 1.0)


def test_large_entries_do_not_overflow():
    x = np.array([1e300, 2e300])
    assert seq_norm(x, 3).value == pytest.approx(1e300 * (1 + 8) ** (1 / 3), rel=1e-14)


def test_norm_limit_two_ones():
    prof = norm_limit_profile([1, 1], [1, 2, 4, 8])
    assert [v for _, v in prof] == pytest.approx([2, math.sqrt(2), 2**0.25, 2**0.125], rel=1e-15)


def test_norm_limit_single_entry():
    assert all(v == 5.0 for _, v in norm_limit_profile([5.0], [1.5, 3, 9, 40]))


def test_norm_limit_random_seed_7():
    x = np.random.default_rng(7).uniform(0, 1, 1000)
    (_, v), = norm_limit_profile(x, [64])
    assert x.max() <= v <= 1000 ** (1 / 64) * x.max()


def test_norm_limit_requires_increasing():
    with pytest.raises(ArgError):
        norm_limit_profile([1.0], [2, 2])
    with pytest.raises(ArgError):
        norm_limit_profile([1.0], [2, INF])


@pytest.mark.parametrize("p, q", [(1, 2), (1.5, 3), (2, 10)])
def test_embedding_single_atom(p, q):
    rep = embedding_check([1, 0, 0], p, q)
    assert rep.holds and rep.ratio == 1.0


def test_embedding_two_ones():
    rep = embedding_check([1, 1], 1, 2)
    assert rep.lhs == pytest.approx(math.sqrt(2)) and rep.rhs == 2.0


def test_embedding_order_enforced():
    with pytest.raises(ArgError):
        embedding_check([1, 1], 3, 2)


def test_counterexample_prefixes():
    np.testing.assert_allclose(counterexample_sequence(2, 3).entries, [1, 1 / math.sqrt(2), 1 / math.sqrt(3)])
    assert counterexample_sequence(1, 2).entries.tolist() == [1.0, 0.5]
    assert counterexample_sequence(4, 1).entries.tolist() == [1.0]
    assert counterexample_sequence(2, 5).tail is None


def test_doubling_profile_flags_harmonic():
    make = lambda N: counterexample_sequence(2, N).entries  # noqa: E731
    div = doubling_profile(make, 2.0)
    conv = doubling_profile(make, 4.0)
    assert div.divergent and all(d > 0.6 for d in div.increments)
    assert not conv.divergent
    # increments of the harmonic sum approach ln 2
    assert div.increments[-1] == pytest.approx(math.log(2), abs=1e-3)


def test_dual_norm_self_dual():
    assert dual_functional_norm([3, 4], 2) == pytest.approx(5.0, rel=1e-15)


def test_dual_norm_p3():
    assert dual_functional_norm([1, 1], 3) == pytest.approx(2 ** (2 / 3), rel=1e-14)
    dirs = np.random.default_rng(0).standard_normal((20000, 2))
    brute = random_direction_sup([1, 1], 3, dirs)
    assert 2 ** (2 / 3) - 1e-3 < brute <= 2 ** (2 / 3) * (1 + 1e-12)


def test_dual_norm_zero():
    assert dual_functional_norm([0, 0], 2.5) == 0.0


def test_dual_norm_l1_is_sup():
    formula, extremal = dual_norm_evaluations([0.5, -3.0, 2.0], 1)
    assert formula == extremal == 3.0


def test_dual_norm_rejects_inf():
    with pytest.raises(ArgError):
        dual_functional_norm([1.0], INF)


def test_dual_inconsistency_detected(monkeypatch):
    import theta_norms.sequence_space as ss

    monkeypatch.setattr(ss, "dual_norm_evaluations", lambda b, p: (1.0, 1.1))
    with pytest.raises(InconsistencyError):
        ss.dual_functional_norm([1.0], 2)


def test_dyadic_input_returned_unchanged():
    r = rational_approximation([0.5, 0.25], 2, 1e-3)
    assert r.values.tolist() == [0.5, 0.25]
    assert r.distance_bound == 0.0


def test_one_third_dyadic():
    r = rational_approximation([1 / 3], 2, 1e-6)
    frac = r.as_fractions()[0]
    assert frac.denominator == 2**r.denominator_log2 or frac.denominator < 2**r.denominator_log2
    assert abs(Fraction(1, 3) - frac) < Fraction(1, 10**6)


def test_enveloped_approximation():
    n = np.arange(1, 1001, dtype=float)
    x = WeightedSequence(n**-1.5, PowerDecay(1.0, 1.5))
    r = rational_approximation(x, 2, 0.01)
    assert len(r.values) < 1000
    assert all(f.denominator & (f.denominator - 1) == 0 for f in r.as_fractions())
    # independent distance: kept part exactly, dropped prefix entries, envelope tail
    kept = np.zeros(1000)
    kept[: len(r.values)] = r.values
    dist = math.sqrt(math.fsum((x.entries - kept) ** 2) + 1000**-2.0 / 2.0)
    assert dist < 0.01


def test_harmonic_envelope_rejected():
    n = np.arange(1, 10001, dtype=float)
    with pytest.raises(TailError):
        rational_approximation(WeightedSequence(1 / n, PowerDecay(1.0, 1.0)), 2, 0.01)


def test_separator_zero_candidates():
    x = diagonal_separator([[0.0, 0.0], [0.0, 0.0]], 2)
    assert x.entries.tolist() == [1.0, 1.0]


def test_separator_large_diagonal():
    c = [[2.0, 0.0], [0.0, 2.0]]
    x = diagonal_separator(c, 2)
    assert x.entries.tolist() == [0.0, 0.0]
    assert all(sup_distance(x, ck) >= 2 for ck in c)


def test_separator_half():
    x = diagonal_separator([[0.5, 0.0], [0.0, 0.5]], 2)
    assert x.entries.tolist() == [1.5, 1.5]
    assert x.entries[0] - 0.5 == 1.0
    assert sup_distance(x, [0.5, 0.0]) >= 1.0


def test_separator_shape_errors():
    with pytest.raises(ShapeError):
        diagonal_separator([[0.0]], 2)
    with pytest.raises(ShapeError):
        diagonal_separator([[0.0], [0.0]], 2)


def test_separator_random_lists():
    rng = np.random.default_rng(1000)
    for _ in range(1000):
        n = int(rng.integers(1, 51))
        cands = rng.uniform(-2, 2, (n, n)) * rng.choice([1e-17, 1.0, 1e3], (n, n))
        x = diagonal_separator(list(cands), n)
        assert all(abs(x.entries[k] - cands[k, k]) >= 1.0 for k in range(n))


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
vectors = arrays(np.float64, st.integers(1, 40), elements=finite)
exponents = st.sampled_from([1.0, 1.5, 2.0, 3.0, 10.0])


@given(vectors, exponents, st.floats(min_value=-1e3, max_value=1e3))
def test_homogeneity(x, e, c):
    lhs = seq_norm(c * x, e).value
    assert lhs == pytest.approx(abs(c) * seq_norm(x, e).value, rel=1e-12, abs=1e-300)
    assert seq_norm(c * x, INF).value == pytest.approx(abs(c) * seq_norm(x, INF).value, rel=1e-12)


@given(vectors, exponents)
def test_sandwich_exact(x, e):
    lo, hi = sandwich_bounds(x, e)
    v = seq_norm(x, e).value
    assert lo <= v <= hi


@given(vectors, st.floats(min_value=1.0, max_value=20.0), st.floats(min_value=1.0, max_value=5.0))
def test_power_mean_monotone(x, p, gap):
    assert seq_norm(x, p + gap).value <= seq_norm(x, p).value * (1 + 1e-12)


@settings(max_examples=50)
@given(arrays(np.float64, st.integers(1, 6), elements=st.floats(-10, 10, allow_subnormal=False)), st.sampled_from([1.5, 2.0, 3.0]))
def test_duality_consistency(b, p):
    formula, extremal = dual_norm_evaluations(b, p)
    assert extremal == pytest.approx(formula, rel=1e-9, abs=1e-300)
    dirs = np.random.default_rng(1).standard_normal((2000, b.size))
    assert random_direction_sup(b, p, dirs) <= formula * (1 + 1e-9)


def test_triangle_inequality_random_pairs(backend):
    rng = np.random.default_rng(77)
    for e in (1.0, 1.5, 2.0, 3.0, 10.0):
        for _ in range(2000):
            n = int(rng.integers(1, 30))
            x, y = rng.standard_normal(n), rng.standard_normal(n)
            lhs = seq_norm(x + y, e).value
            assert lhs <= (seq_norm(x, e).value + seq_norm(y, e).value) * (1 + 1e-12)


def test_random_direction_sup_batched(rng):
    dirs = rng.standard_normal((5000, 4))
    B = rng.standard_normal((7, 4))
    batched = random_direction_sup(B, 2.5, dirs)
    single = [random_direction_sup(b, 2.5, dirs) for b in B]
    assert batched.shape == (7,)
    assert np.allclose(batched, single, rtol=1e-14, atol=0)
