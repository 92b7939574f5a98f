import numpy as np
import pytest

from jtmaps.canonical import B1, B2, B3
from jtmaps.errors import InvalidArgument, NotPositiveOutput
from jtmaps.linearize import (LinMapH2, check_jte, check_linearity, commutativity_residual, evaluate,
                              extract_f, linearize)
from jtmaps.mat2 import mexp
from jtmaps.sampling import random_herm, random_pd, random_su2, random_unitary, rng
from jtmaps.spin import su2_to_so3


def test_extract_f_identity_and_inverse():
    np.testing.assert_allclose(extract_f(B1(np.eye(2), 0)).F, np.eye(4), atol=1e-14)
    np.testing.assert_allclose(extract_f(B2(np.eye(2), 0)).F, -np.eye(4), atol=1e-14)


def test_extract_f_block_form_of_b1():
    gen = rng(0)
    u = random_su2(gen)
    c = 0.35
    F = extract_f(B1(u, c)).F
    expected = np.zeros((4, 4))
    expected[0, 0] = 1 + 2 * c
    expected[1:, 1:] = su2_to_so3(u)
    np.testing.assert_allclose(F, expected, atol=1e-13)


def test_linmap_matches_log_of_output():
    # f(h) = log phi(exp h), checked with an independent eigh-based log
    e = B3(random_unitary(rng(1)), 0.8, -0.3)
    F = extract_f(e)
    for h in random_herm(rng(2), 20, max_norm=2):
        w, v = np.linalg.eigh(e(mexp(h)))
        log = (v * np.log(w)) @ v.conj().T
        np.testing.assert_allclose(F(h), log, atol=1e-12)


def test_check_linearity():
    e = B3(np.eye(2), 1, 0)
    assert check_linearity(e, extract_f(e), 50) <= 1e-9
    plus_one = lambda a: a + np.eye(2)
    assert check_linearity(plus_one, extract_f(plus_one), 50) > 0.1
    with pytest.raises(InvalidArgument):
        check_linearity(e, extract_f(e), 0)


def test_check_jte():
    gen = rng(3)
    for e in (B1(random_unitary(gen), 0.7), B2(random_unitary(gen), -1.2), B3(random_unitary(gen), 1, -2)):
        assert check_jte(e, 200, vectorized=True) <= 1e-9
    assert check_jte(lambda a: a @ a, 50) > 0.1
    assert check_jte(lambda a: a.T, 200) <= 1e-9
    with pytest.raises(InvalidArgument):
        check_jte(lambda a: a, 0)


def test_vectorized_and_scalar_evaluation_agree():
    e = B2(random_unitary(rng(4)), 0.4)
    assert check_jte(e, 30, vectorized=True) == pytest.approx(check_jte(e, 30), abs=1e-15)


def test_evaluate_rejects_non_positive_outputs():
    with pytest.raises(NotPositiveOutput):
        evaluate(lambda a: -a, random_pd(rng(5), 3))


def test_evaluate_accepts_tiny_outputs():
    # outputs far below tol_pd are still positive definite
    e = B1(np.eye(2), 3.0)
    evaluate(e, np.array([np.diag([1e-3, 1e-2])]), vectorized=True)


def test_nondeterministic_black_box_rejected():
    gen = rng(6)
    with pytest.raises(InvalidArgument):
        extract_f(lambda a: a * gen.uniform(1, 2))


def test_linearize_report():
    rep = linearize(B1(random_unitary(rng(7)), -0.3), vectorized=True)
    assert rep.linearity_residual <= 1e-10
    assert rep.jte_residual <= 1e-10
    assert rep.commutativity_residual <= 1e-10
    assert rep.F.v == pytest.approx(0.4)
    np.testing.assert_allclose(rep.F.f0_row[1:], 0, atol=1e-12)


def test_commutativity_residual_detects_non_commutativity_preserving_map():
    F = np.eye(4)
    F[1, 0] = 1.0
    F[2, 1] = 1.0
    F[2, 2] = 0.0
    assert commutativity_residual(LinMapH2(F)) > 1e-3
