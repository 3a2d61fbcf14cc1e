import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import eig as dense_eig, eigh

from loglap.errors import NumericError
from loglap.mesh import DomainSpec, WeightSpec
from loglap.pencil import find_spd_shift, is_spd, jacobi_eigh, rayleigh, solve
from loglap.problem import setup_problem


def test_shift_two_by_two():
    EL, Mw = np.diag([2.0, 6.0]), np.diag([1.0, -1.0])
    assert find_spd_shift(EL, Mw, -1.0) == -1.0


def test_shift_definite_case_returns_hint():
    EL, Mw = np.diag([2.0, 3.0]), np.eye(2)
    assert find_spd_shift(EL, Mw, -0.5) == -0.5


def test_shift_searches_when_hint_fails():
    EL, Mw = np.diag([2.0, 6.0]), np.diag([1.0, -1.0])
    sigma = find_spd_shift(EL, Mw, -50.0)
    assert is_spd(EL - sigma * Mw)


def test_shift_impossible():
    with pytest.raises(NumericError, match="pencil not definitizable"):
        find_spd_shift(np.zeros((2, 2)), np.diag([1.0, -1.0]), -1.0)


def test_solve_two_by_two():
    res = solve(np.diag([2.0, 6.0]), np.diag([1.0, -1.0]), -1.0)
    np.testing.assert_allclose(res.lambdas, [2.0], rtol=1e-14)
    np.testing.assert_allclose(res.negative_branch, [-6.0], rtol=1e-14)
    np.testing.assert_allclose(np.abs(res.vectors[:, 0]), [1.0, 0.0], atol=1e-15)
    assert res.shift_used == -1.0


def test_solve_scalar():
    res = solve(np.array([[2.0]]), np.array([[1.0]]), 0.0)
    assert res.lambdas[0] == pytest.approx(2.0)
    assert res.vectors[0, 0] == pytest.approx(1.0)


def test_solve_rejects_bad_shift():
    with pytest.raises(NumericError) as info:
        solve(np.diag([2.0, 6.0]), np.diag([1.0, -1.0]), 10.0)
    assert info.value.stage == "factorization"


def test_null_direction_dropped(caplog):
    EL = np.diag([2.0, 3.0, 4.0])
    Mw = np.diag([1.0, 0.0, -1.0])
    with caplog.at_level(logging.WARNING):
        res = solve(EL, Mw, -1.0)
    assert len(res) == 1 and res.negative_branch.size == 1
    assert "null direction" in caplog.text


def _random_pencil(rng, n, indefinite=True):
    A = rng.standard_normal((n, n))
    EL = A @ A.T + n * np.eye(n)
    d = rng.uniform(0.5, 2.0, n)
    if indefinite:
        d[: n // 3] *= -1
    return EL, np.diag(d)


@given(st.integers(2, 25), st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_solve_against_dense_generalized_eig(n, seed):
    rng = np.random.default_rng(seed)
    EL, Mw = _random_pencil(rng, n)
    res = solve(EL, Mw, find_spd_shift(EL, Mw, -1.0))
    w, V = dense_eig(EL, Mw)
    w = np.real(w)
    J = np.einsum("ik,ij,jk->k", np.real(V), Mw, np.real(V))
    ref_pos = np.sort(w[J > 0])
    ref_neg = np.sort(w[J < 0])
    np.testing.assert_allclose(res.lambdas, ref_pos, rtol=1e-8)
    np.testing.assert_allclose(res.negative_branch, ref_neg, rtol=1e-8)
    assert np.all(res.residuals <= 1e-9)
    G = res.vectors.T @ Mw @ res.vectors
    np.testing.assert_allclose(G, np.eye(len(res)), atol=1e-9)
    assert np.all(res.lambdas >= res.shift_used)
    assert np.all(np.diff(res.lambdas) >= 0)


def test_shift_invariance(rng):
    EL, Mw = _random_pencil(rng, 20)
    s1 = find_spd_shift(EL, Mw, -1.0)
    a = solve(EL, Mw, s1)
    b = solve(EL, Mw, s1 * 4)
    np.testing.assert_allclose(a.lambdas, b.lambdas, rtol=1e-8)


def test_definite_weight_full_branch(small_problem):
    res = small_problem.result
    assert len(res) == small_problem.mesh.n
    assert res.negative_branch.size == 0
    ref = eigh(small_problem.mats.EL, small_problem.mats.Mw, eigvals_only=True)
    np.testing.assert_allclose(res.lambdas, ref, rtol=1e-10)


def test_jacobi_matches_lapack(rng):
    A = rng.standard_normal((30, 30))
    A = A + A.T
    w, V = jacobi_eigh(A)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(A), rtol=1e-11, atol=1e-12)
    np.testing.assert_allclose(V.T @ V, np.eye(30), atol=1e-12)
    np.testing.assert_allclose(A @ V, V * w, atol=1e-10)


def test_jacobi_as_pencil_eigensolver(small_problem):
    mats = small_problem.mats
    sigma = small_problem.result.shift_used
    a = solve(mats.EL, mats.Mw, sigma, eig=jacobi_eigh)
    np.testing.assert_allclose(a.lambdas, small_problem.result.lambdas, rtol=1e-11)


def test_orientation_nonnegative_mean(small_problem):
    v1 = small_problem.result.vector(1)
    assert v1.sum() > 0


def test_rayleigh(small_problem):
    mats, res = small_problem.mats, small_problem.result
    v1 = res.vector(1)
    assert rayleigh(mats.EL, mats.Mw, v1) == pytest.approx(res.lambdas[0], rel=1e-10)
    assert rayleigh(mats.EL, mats.Mw, 7 * v1) == pytest.approx(rayleigh(mats.EL, mats.Mw, v1), rel=1e-14)
    rng = np.random.default_rng(1)
    for u in rng.standard_normal((300, small_problem.mesh.n)):
        assert rayleigh(mats.EL, mats.Mw, u) >= res.lambdas[0] - 1e-9


def test_rayleigh_outside_cone():
    with pytest.raises(ValueError, match="positive cone"):
        rayleigh(np.eye(2), np.diag([1.0, -1.0]), np.array([0.0, 1.0]))


def test_sign_changing_weight_branches():
    w = WeightSpec.piecewise([0.0], [-1.0, 1.0], w2_lambda0=-1.25)
    p = setup_problem(DomainSpec(-0.5, 0.5), 64, w)
    res = p.result
    assert len(res) == 32 and res.negative_branch.size == 32
    # the weight is odd, so reflecting x -> -x maps the positive branch onto the negative one
    np.testing.assert_allclose(np.sort(-res.negative_branch), res.lambdas, rtol=1e-10)
    assert np.all(res.residuals <= 1e-9)


def test_truncated_and_function(small_problem):
    res = small_problem.result.truncated(3)
    assert len(res) == 3
    f = res.function(2)
    assert f.mesh is small_problem.mesh
