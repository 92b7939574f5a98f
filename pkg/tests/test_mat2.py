import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jtmaps.errors import NotEffect, NotHermitian, NotPositiveDefinite, NotUnitary, Singular
from jtmaps.mat2 import (PAULI, SIGMA0, SIGMA_X, SIGMA_Y, SIGMA_Z, adj2, as_effect, as_herm, as_pd,
                         as_unitary, dagger, det2, eig2, eigvalsh2, hs_inner, hs_norm, inv2, mexp,
                         mexp_traceless, mlog, mpow, msqrt, pauli_decompose, pauli_recompose,
                         spec_norm, tr2)
from jtmaps.sampling import random_herm, random_pd, random_unitary, rng

finite = st.floats(-5, 5, allow_nan=False)
coords = st.tuples(finite, finite, finite, finite)


def eigh_fn(h, fn):
    # oracle: numpy's Hermitian eigensolver
    w, v = np.linalg.eigh(h)
    return (v * fn(w)[..., None, :]) @ np.swapaxes(v.conj(), -1, -2)


def test_sigma_y_sign_convention():
    assert np.array_equal(SIGMA_Y, np.array([[0, 1j], [-1j, 0]]))
    assert np.array_equal(pauli_recompose([0, 0, 1, 0]), SIGMA_Y)


@pytest.mark.parametrize("h, expected", [
    (SIGMA_X, [0, 1, 0, 0]),
    (SIGMA0, [1, 0, 0, 0]),
    (np.diag([2, 0]), [1, 0, 0, 1]),
])
def test_pauli_decompose_basis(h, expected):
    np.testing.assert_allclose(pauli_decompose(h), expected, atol=1e-15)


@given(coords)
def test_pauli_round_trip(c):
    np.testing.assert_allclose(pauli_decompose(pauli_recompose(np.array(c))), c, atol=1e-12)


def test_basis_is_orthonormal():
    gram = np.array([[hs_inner(a, b) for b in PAULI] for a in PAULI])
    np.testing.assert_allclose(gram, np.eye(4), atol=1e-15)
    assert hs_inner(SIGMA0, np.diag([3.0, 5.0])) == pytest.approx(4.0)


def test_norms():
    assert hs_norm(SIGMA_Z) == pytest.approx(1.0)
    assert hs_norm(np.zeros((2, 2))) == 0.0
    assert hs_norm(np.diag([3.0, -3.0])) == pytest.approx(3.0)
    assert spec_norm(SIGMA_Z) == pytest.approx(1.0)
    assert spec_norm(np.diag([3.0, -1.0])) == pytest.approx(3.0)
    assert spec_norm((SIGMA0 + SIGMA_X) / 2) == pytest.approx(1.0)


def test_eig2_examples():
    l1, l2, u = eig2(SIGMA_X)
    assert (l1, l2) == pytest.approx((1.0, -1.0))
    np.testing.assert_allclose(np.abs(u), np.full((2, 2), 1 / np.sqrt(2)), atol=1e-15)
    np.testing.assert_allclose(u @ np.diag([l1, l2]) @ dagger(u), SIGMA_X, atol=1e-15)
    l1, l2, u = eig2(np.diag([5.0, 2.0]))
    assert (l1, l2) == (5.0, 2.0)
    np.testing.assert_array_equal(u, np.eye(2))
    l1, l2, u = eig2(3.5 * SIGMA0)
    assert (l1, l2) == (3.5, 3.5)
    np.testing.assert_array_equal(u, np.eye(2))


def test_eigvalsh2_matches_numpy():
    h = random_herm(rng(1), 500, max_norm=10)
    l1, l2 = eigvalsh2(h)
    w = np.linalg.eigvalsh(h)
    np.testing.assert_allclose(l1, w[:, 1], atol=1e-12)
    np.testing.assert_allclose(l2, w[:, 0], atol=1e-12)


def test_eigvalsh2_small_eigenvalue_relative_accuracy():
    # det/root keeps the small eigenvalue accurate where a0 - r would cancel
    l1, l2 = eigvalsh2(np.diag([1e8, 1e-8]))
    assert l2 == pytest.approx(1e-8, rel=1e-14)


def test_mexp_examples():
    t = 0.7
    np.testing.assert_allclose(mexp(t * SIGMA_Y), np.cosh(t) * SIGMA0 + np.sinh(t) * SIGMA_Y, atol=1e-15)
    np.testing.assert_array_equal(mexp(np.zeros((2, 2))), SIGMA0)
    np.testing.assert_allclose(mexp(np.diag([0.3, -1.2])), np.diag(np.exp([0.3, -1.2])), rtol=1e-15)


def test_mexp_against_eigh_oracle():
    h = random_herm(rng(2), 300, max_norm=5)
    np.testing.assert_allclose(mexp(h), eigh_fn(h, np.exp), rtol=1e-12, atol=1e-12)
    x = h - tr2(h)[:, None, None].real / 2 * SIGMA0
    np.testing.assert_allclose(mexp_traceless(x), eigh_fn(x, np.exp), rtol=1e-12, atol=1e-12)


def test_mlog_examples():
    np.testing.assert_allclose(mlog(SIGMA0), np.zeros((2, 2)), atol=1e-16)
    np.testing.assert_allclose(mlog(np.diag([np.e, np.e ** 2])), np.diag([1.0, 2.0]), atol=1e-15)


def test_mlog_inverts_mexp():
    h = random_herm(rng(3), 1000, max_norm=5)
    np.testing.assert_allclose(mlog(mexp(h)), h, atol=1e-11)


def test_mlog_near_degenerate_spectrum():
    h = 1e-9 * SIGMA_X + 0.5 * SIGMA0
    np.testing.assert_allclose(mlog(mexp(h)), h, atol=1e-15)


def test_msqrt():
    np.testing.assert_allclose(msqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-15)
    p = (SIGMA0 + SIGMA_X) / 2
    np.testing.assert_allclose(msqrt(p), p, atol=1e-15)
    a = random_pd(rng(4), 500)
    r = msqrt(a)
    np.testing.assert_allclose(r @ r, a, rtol=1e-12, atol=1e-12)


def test_mpow_matches_oracle():
    a = random_pd(rng(5), 200)
    np.testing.assert_allclose(mpow(a, 0.37), eigh_fn(a, lambda w: w ** 0.37), rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(mpow(a, -1.0), np.linalg.inv(a), rtol=1e-12, atol=1e-12)


def test_det_tr_adj():
    np.testing.assert_array_equal(adj2(np.diag([2.0, 7.0])), np.diag([7.0, 2.0]))
    gen = rng(6)
    m = gen.normal(size=(100, 2, 2)) + 1j * gen.normal(size=(100, 2, 2))
    np.testing.assert_allclose(adj2(m) @ m, det2(m)[:, None, None] * SIGMA0, atol=1e-12)
    np.testing.assert_allclose(det2(m), np.linalg.det(m), atol=1e-12)
    h = random_herm(gen, 100, max_norm=3)
    np.testing.assert_allclose(det2(mexp(h)), np.exp(tr2(h)), rtol=1e-12)
    np.testing.assert_allclose(inv2(m) @ m, np.broadcast_to(SIGMA0, m.shape), atol=1e-9)


def test_inv2_singular():
    with pytest.raises(Singular):
        inv2(np.array([[1.0, 2.0], [2.0, 4.0]]))


def test_validators():
    with pytest.raises(NotHermitian):
        as_herm(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(NotPositiveDefinite):
        as_pd(np.array([[1.0, 2.0], [2.0, 1.0]]))
    with pytest.raises(NotEffect):
        as_effect(np.diag([1.5, 0.2]))
    with pytest.raises(NotUnitary):
        as_unitary(np.diag([1.0, 2.0]))
    as_effect(np.diag([1.0, 0.0]))
    as_unitary(random_unitary(rng(7)))


def test_hermiticity_check_is_scale_relative():
    # rounding-level asymmetry on a huge matrix must not be rejected
    a = np.array([[1e12, 3e11 + 1e-3], [3e11, 2e12]])
    as_herm(a)


@settings(max_examples=50)
@given(coords)
def test_exp_log_round_trip_property(c):
    h = pauli_recompose(np.array(c) / 2)
    np.testing.assert_allclose(mlog(mexp(h)), h, atol=1e-10 * max(1.0, np.abs(c).max()))
