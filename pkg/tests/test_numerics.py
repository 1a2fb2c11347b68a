import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from mltlasso.numerics import (
    FIELD_PRIME,
    NotPositiveDefiniteError,
    cholesky,
    derive_seed,
    field_rank,
    log_det,
    make_rng,
    sample_standard_normal,
    sample_uniform_field,
    spd_inverse,
)


def random_spd(rng, p):
    A = rng.standard_normal((p, p + 2))
    return A @ A.T / (p + 2) + 0.1 * np.eye(p)


def test_field_prime_is_prime_below_2_62():
    import sympy

    assert sympy.isprime(FIELD_PRIME)
    assert sympy.nextprime(FIELD_PRIME) > 2**62


def test_normal_sampling_is_deterministic():
    a = sample_standard_normal(make_rng(7), 2, 2)
    b = sample_standard_normal(make_rng(7), 2, 2)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, sample_standard_normal(make_rng(8), 2, 2))


def test_normal_moments():
    # 4 sigma: sd(mean) = 1/sqrt(1e5) ~ 0.0032, sd(var) = sqrt(2/1e5) ~ 0.0045
    x = sample_standard_normal(make_rng(2024), 1, 100_000)
    assert abs(x.mean()) < 0.02
    assert abs(x.var() - 1) < 0.05


def test_normal_bad_shape():
    with pytest.raises(ValueError):
        sample_standard_normal(make_rng(0), 0, 3)


def test_uniform_field_shape_range_determinism():
    a = sample_uniform_field(make_rng(3), 4, 5)
    assert a.shape == (4, 5)
    assert a.min() >= 0 and a.max() < FIELD_PRIME
    assert np.array_equal(a, sample_uniform_field(make_rng(3), 4, 5))


def test_derived_seeds_depend_on_key_only():
    a = make_rng(derive_seed(5, 1, 2, 3)).standard_normal(4)
    b = make_rng(derive_seed(5, 1, 2, 3)).standard_normal(4)
    c = make_rng(derive_seed(5, 1, 2, 4)).standard_normal(4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_cholesky_examples():
    assert np.array_equal(cholesky(np.eye(3)), np.eye(3))
    L = cholesky(np.array([[4.0, 2.0], [2.0, 3.0]]))
    assert np.allclose(L, [[2, 0], [1, np.sqrt(2)]], rtol=0, atol=1e-15)
    with pytest.raises(NotPositiveDefiniteError):
        cholesky(np.array([[1.0, 2.0], [2.0, 1.0]]))
    with pytest.raises(ValueError):
        cholesky(np.array([[1.0, 2.0], [0.0, 1.0]]))


@pytest.mark.parametrize("p", range(1, 10))
def test_cholesky_residual(p):
    rng = np.random.default_rng(p)
    for _ in range(20):
        A = random_spd(rng, p)
        L = cholesky(A)
        assert np.allclose(L, np.tril(L))
        assert np.abs(L @ L.T - A).max() <= 1e-10 * np.abs(A).max()


def test_spd_inverse():
    assert np.allclose(spd_inverse(np.eye(4)), np.eye(4))
    assert np.allclose(spd_inverse(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]))
    rng = np.random.default_rng(11)
    A = random_spd(rng, 5)
    assert np.abs(A @ spd_inverse(A) - np.eye(5)).max() <= 1e-8


def test_log_det():
    assert log_det(np.eye(3)) == 0.0
    assert log_det(np.diag([np.e, np.e])) == pytest.approx(2.0, rel=1e-12)
    rng = np.random.default_rng(5)
    for p in range(1, 10):
        A = random_spd(rng, p)
        oracle = np.sum(np.log(np.linalg.eigvalsh(A)))
        assert log_det(A) == pytest.approx(oracle, rel=1e-10, abs=1e-12)
        assert log_det(spd_inverse(A)) == pytest.approx(-log_det(A), abs=1e-8)


def test_field_rank_examples():
    assert field_rank(np.zeros((3, 4), dtype=np.int64)) == 0
    assert field_rank(np.zeros((0, 4), dtype=np.int64)) == 0
    for k in range(1, 6):
        assert field_rank(np.eye(k, dtype=np.int64)) == k
    r1, r2 = [5, FIELD_PRIME - 1, 7], [FIELD_PRIME - 3, 2, 11]
    r3 = [(a + b) % FIELD_PRIME for a, b in zip(r1, r2)]
    assert field_rank([r1, r2, r3]) == 2


@settings(max_examples=300)
@given(arrays(np.int64, st.tuples(st.integers(1, 6), st.integers(1, 6)), elements=st.integers(-10, 10)))
def test_field_rank_matches_float_rank(m):
    # small integer matrices: minors are far below q, so both ranks agree
    assert field_rank(m) == np.linalg.matrix_rank(m.astype(float))


def test_field_rank_is_mod_q():
    # singular mod q but not over the integers
    m = [[1, 0], [0, FIELD_PRIME]]
    assert field_rank(m) == 1
