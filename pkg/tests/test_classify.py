import numpy as np
import pytest

from jtmaps.canonical import B1, B2, B3, TRANSPOSE_UNITARY, gauge_equal
from jtmaps.classify import classify_jte, classify_linear_map, explain
from jtmaps.errors import NotIsometry, NotJTE, NotLinear, ScaleNotOne
from jtmaps.linearize import LinMapH2
from jtmaps.mat2 import det2
from jtmaps.sampling import random_unitary, rng
from jtmaps.spin import su2_to_so3


def test_b1_round_trip():
    gen = rng(0)
    for _ in range(20):
        e = B1(random_unitary(gen), 0.3)
        res = classify_jte(e, vectorized=True)
        assert isinstance(res.form, B1)
        assert gauge_equal(res.form, e)
        assert abs(res.form.c - 0.3) <= 1e-6
        assert res.diagnostics.branch == "rotation"
        assert res.diagnostics.residual <= 1e-9


def test_b2_and_b3_round_trip():
    gen = rng(1)
    for _ in range(20):
        u = random_unitary(gen)
        e = B2(u, gen.uniform(-2, 2))
        res = classify_jte(e, vectorized=True)
        assert gauge_equal(res.form, e) and res.diagnostics.branch == "reflection"
        e = B3(u, *gen.uniform(-2, 2, 2))
        res = classify_jte(e, vectorized=True)
        assert gauge_equal(res.form, e) and res.diagnostics.branch == "nonscalar"


def test_scalar_family_goes_through_degenerate_branch():
    res = classify_jte(B3(np.eye(2), 0.2, 0.2))
    assert res.diagnostics.branch == "degenerate"
    assert res.form.c1 == pytest.approx(0.2) and res.form.c2 == pytest.approx(0.2)


def test_transpose_classifies_as_b2():
    res = classify_jte(lambda a: np.swapaxes(a, -1, -2), vectorized=True)
    assert isinstance(res.form, B2)
    assert abs(res.form.d - 1) <= 1e-6
    assert gauge_equal(res.form, B2(TRANSPOSE_UNITARY, 1.0))


def test_the_constant_identity_map():
    res = classify_jte(lambda a: np.broadcast_to(np.eye(2), np.shape(a)), vectorized=True)
    assert gauge_equal(res.form, B3(np.eye(2), 0, 0))


def test_negative_controls():
    with pytest.raises(NotJTE) as err:
        classify_jte(lambda a: a @ a, vectorized=True)
    assert err.value.residual > 0.01
    with pytest.raises((NotJTE, NotLinear)) as err:
        classify_jte(lambda a: a + np.eye(2), vectorized=True)
    assert err.value.residual > 0.01


def test_power_scaled_rotation_rejected():
    # A -> exp(2 log A) = A^2 in log coordinates: f = 2 * identity, p = 2
    F = 2 * np.eye(4)
    with pytest.raises(ScaleNotOne) as err:
        classify_linear_map(LinMapH2(F))
    assert err.value.p == pytest.approx(2.0)
    assert "p = 2" in explain(err.value)


def test_non_isometry_rejected():
    F = np.eye(4)
    F[1, 1] = 3.0
    with pytest.raises(NotIsometry):
        classify_linear_map(LinMapH2(F))


def test_trace_row_and_isometry_witnesses():
    gen = rng(2)
    for e in (B1(random_unitary(gen), 0.4), B2(random_unitary(gen), -0.7)):
        d = classify_jte(e, vectorized=True).diagnostics
        assert d.claim1_residual <= 1e-8
        assert d.isometry_residual <= 1e-8
        assert abs(d.p - 1) <= 1e-8


def test_linear_map_branch_table():
    u = random_unitary(rng(3))
    u = u / np.sqrt(det2(u))
    R = su2_to_so3(u)
    F = np.zeros((4, 4))
    F[0, 0] = 2.0
    F[1:, 1:] = R
    form, d = classify_linear_map(LinMapH2(F))
    assert isinstance(form, B1) and form.c == pytest.approx(0.5) and d.detM_sign == 1
    F[1:, 1:] = -R
    form, d = classify_linear_map(LinMapH2(F))
    assert isinstance(form, B2) and form.d == pytest.approx(1.5) and d.detM_sign == -1


def test_explain_text():
    text = explain(classify_jte(B1(random_unitary(rng(4)), 0.1), vectorized=True))
    assert "f(I) scalar" in text and "det M > 0" in text and "p = " in text
    text = explain(classify_jte(B3(random_unitary(rng(5)), 0.9, -0.4), vectorized=True))
    assert "eigenvalues of f(I)" in text
