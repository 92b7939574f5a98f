import numpy as np
import pytest

from jtmaps.canonical import B1, B2, B3, relative_residual
from jtmaps.effects import (D1, D2, D3, D4, RankOneImage, SeqZero, apply_seq, check_seq, classify_seq,
                            commute_iff_seq_commute, extend_to_cone, order_leq, seq_factor,
                            seq_gauge_equal, seq_product)
from jtmaps.errors import InvalidArgument, NotDominated, NotHomogeneous, NotSeqEndo
from jtmaps.linearize import check_jte
from jtmaps.mat2 import SIGMA0, SIGMA_X
from jtmaps.sampling import random_effect, random_pd, random_rank_one_projection, random_unitary, rng


def sqrt_oracle(a):
    w, v = np.linalg.eigh(a)
    return (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T


def test_seq_product_examples():
    b = random_effect(rng(0))
    np.testing.assert_allclose(seq_product(SIGMA0, b), b, atol=1e-15)
    p = (SIGMA0 + SIGMA_X) / 2
    np.testing.assert_allclose(seq_product(p, p), p, atol=1e-15)
    np.testing.assert_allclose(seq_product(np.diag([0.25, 1.0]), SIGMA0 / 2 + SIGMA_X / 4),
                               [[1 / 8, 1 / 8], [1 / 8, 1 / 2]], atol=1e-15)


def test_seq_product_matches_oracle():
    gen = rng(1)
    for a, b in zip(random_effect(gen, 50), random_effect(gen, 50)):
        r = sqrt_oracle(a)
        np.testing.assert_allclose(seq_product(a, b), r @ b @ r, atol=1e-12)


def test_order():
    b = random_effect(rng(2))
    assert order_leq(np.zeros((2, 2)), b)
    assert not order_leq(np.diag([0.5, 0.5]), np.diag([0.25, 1.0]))
    assert order_leq(b, SIGMA0)


def test_seq_factor():
    gen = rng(3)
    for _ in range(50):
        b = random_effect(gen, invertible=True)
        c = random_effect(gen)
        np.testing.assert_allclose(seq_factor(seq_product(b, c), b), c, atol=1e-9)
    a = random_effect(gen)
    np.testing.assert_allclose(seq_factor(a, SIGMA0), a, atol=1e-15)
    with pytest.raises(NotDominated):
        seq_factor(np.diag([1.0, 0.0]), np.diag([0.5, 0.5]))


def test_commute_iff_seq_commute():
    assert commute_iff_seq_commute(np.diag([0.2, 0.7]), np.diag([0.9, 0.1])) == (True, True)
    p = np.diag([1.0, 0.0])
    q = (SIGMA0 + SIGMA_X) / 2
    assert commute_iff_seq_commute(p, q) == (False, False)
    gen = rng(4)
    for a, b in zip(random_effect(gen, 1000), random_effect(gen, 1000)):
        plain, seq = commute_iff_seq_commute(a, b)
        assert plain == seq


def test_apply_seq_examples():
    np.testing.assert_allclose(apply_seq(D2(np.eye(2)), np.diag([0.3, 0.8])), np.diag([0.8, 0.3]), atol=1e-15)
    p = random_rank_one_projection(rng(5))
    assert np.array_equal(apply_seq(D3(np.eye(2), 2.0), p), np.zeros((2, 2)))
    np.testing.assert_allclose(apply_seq(D1(np.eye(2), 0.0), p), p, atol=1e-15)
    assert np.array_equal(apply_seq(SeqZero(), p), np.zeros((2, 2)))


def test_d3_maps_all_singular_effects_to_zero():
    gen = rng(6)
    probes = random_rank_one_projection(gen, 200) * gen.uniform(0, 1, 200)[:, None, None]
    probes = np.concatenate([probes, np.diag([1.0, 0.0])[None], np.diag([0.0, 1.0])[None], np.zeros((1, 2, 2))])
    assert np.array_equal(apply_seq(D3(random_unitary(gen), 1.5), probes), np.zeros_like(probes))


def test_form_parameter_constraints():
    with pytest.raises(InvalidArgument):
        D1(np.eye(2), -0.1)
    with pytest.raises(InvalidArgument):
        D3(np.eye(2), 1.0)
    with pytest.raises(InvalidArgument):
        D4(np.eye(2), 0.5, -0.5)


def all_seq_forms(gen):
    u = random_unitary(gen)
    return [SeqZero(), D1(u, gen.uniform(0, 2)), D2(u), D3(u, gen.uniform(1.05, 3)),
            D4(u, *gen.uniform(0, 2, 2)), RankOneImage(u, gen.uniform(0, 2))]


def test_seq_law_for_all_forms():
    gen = rng(7)
    for _ in range(5):
        for s in all_seq_forms(gen):
            assert check_seq(s, 500, vectorized=True) <= 1e-9, s


def test_seq_law_detects_violations():
    assert check_seq(lambda a: a @ a, 100, vectorized=True) > 0.01
    with pytest.raises(InvalidArgument):
        check_seq(D2(np.eye(2)), 0)


def test_order_preservation():
    gen = rng(8)
    for s in all_seq_forms(gen):
        for _ in range(30):
            b = random_effect(gen)
            a = seq_product(b, random_effect(gen))  # a <= b
            assert order_leq(apply_seq(s, a), apply_seq(s, b))


def test_classify_seq_round_trip():
    gen = rng(9)
    for _ in range(5):
        for s in all_seq_forms(gen):
            res = classify_seq(s, vectorized=True)
            assert type(res.form) is type(s)
            assert seq_gauge_equal(res.form, s)
            assert res.residual <= 1e-8


def test_classify_d3_boundary():
    res = classify_seq(D3(random_unitary(rng(10)), 1.5), vectorized=True)
    assert isinstance(res.form, D3) and abs(res.form.d - 1.5) <= 1e-6
    assert res.boundary_residual == 0.0


def test_constant_identity_is_d4_with_zero_exponents():
    res = classify_seq(lambda a: np.broadcast_to(SIGMA0, np.shape(a)).copy(), vectorized=True)
    assert isinstance(res.form, D4)
    assert res.form.c1 == 0.0 and res.form.c2 == 0.0


def test_classify_seq_rejections():
    with pytest.raises(NotSeqEndo):
        classify_seq(lambda a: a @ a, vectorized=True)
    # phi(I) = phi(I)^2 for any sequential endomorphism, so a constant I/2 already
    # fails the sequential law before the projection check is reached
    with pytest.raises(NotSeqEndo):
        classify_seq(lambda a: np.broadcast_to(SIGMA0 / 2, np.shape(a)).copy(), vectorized=True)


@pytest.mark.parametrize("make", [
    lambda u: (D1(u, 0.6), 2 * 0.6 + 1, None, B1(u, 0.6)),
    lambda u: (D2(u), 1.0, None, B2(u, 1.0)),
    lambda u: (D3(u, 1.8), 2 * 1.8 - 1, None, B2(u, 1.8)),
    lambda u: (D4(u, 0.9, 0.2), (1.8, 0.4), u, B3(u, 0.9, 0.2)),
], ids=["d1", "d2", "d3", "d4"])
def test_extend_to_cone(make):
    u = random_unitary(rng(11))
    s, c, basis, expected = make(u)
    Phi = extend_to_cone(s, c, basis=basis, vectorized=True)
    a = random_pd(rng(12), 100)
    assert relative_residual(Phi(a), expected(a)) <= 1e-9
    assert check_jte(Phi, 200, vectorized=True) <= 1e-8


def test_extend_identity():
    Phi = extend_to_cone(D1(np.eye(2), 0.0), 1.0, vectorized=True)
    np.testing.assert_allclose(Phi(2 * SIGMA0), 2 * SIGMA0, atol=1e-15)


def test_extend_rejects_wrong_exponent():
    with pytest.raises(NotHomogeneous):
        extend_to_cone(D2(np.eye(2)), 2.0, vectorized=True)
