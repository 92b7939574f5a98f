"""The 2x2 effect algebra with the sequential product ``A o B = A^1/2 B A^1/2``.

Canonical continuous sequential endomorphisms, with ``D = Det A`` and the
convention ``0**0 = 1``:

* ``D1(U, c)``, ``c >= 0``:  A -> D**c U A U*
* ``D2(V)``:                 A -> V adj(A) V*
* ``D3(V, d)``, ``d > 1``:   A -> D**d V A^-1 V* if A invertible, else 0
* ``D4(W, c1, c2)``, ``c1, c2 >= 0``:  A -> W diag(D**c1, D**c2) W*

plus the two non-unital maps produced when ``phi(I)`` is not the identity:
``SeqZero`` and ``RankOneImage(W, c)``: A -> W diag(D**c, 0) W*.
"""

from dataclasses import dataclass, field

import numpy as np

from .canonical import B1, B2, relative_residual, _phase_distance
from .classify import classify_linear_map
from .errors import (InvalidArgument, LogFailure, NotDominated, NotEffect, NotEffectValued,
                     NotHermitian, NotHomogeneous, NotProjectionAtI, NotSeqEndo, SingularBase)
from .linearize import LinMapH2
from .mat2 import (DEFAULT_TOL, PAULI, SIGMA0, adj2, as_effect, as_herm, as_unitary, dagger, det2,
                   eig2, eigvalsh2, inv2, mexp, mlog, msqrt, pauli_decompose, spec_norm)
from .sampling import random_effect, random_herm, random_rank_one_projection, rng

__all__ = [
    "SeqZero", "D1", "D2", "D3", "D4", "RankOneImage", "SeqForm", "SeqClassifyResult",
    "seq_product", "order_leq", "seq_factor", "apply_seq", "extend_to_cone", "classify_seq",
    "commute_iff_seq_commute", "check_seq", "evaluate_effects", "seq_gauge_equal",
]


def _nonneg(name, x):
    x = float(x)
    if not x >= 0:
        raise InvalidArgument(f"{name} must be non-negative, got {x}")
    return x


@dataclass(frozen=True, eq=False)
class SeqZero:
    def __call__(self, a):
        return apply_seq(self, a)


@dataclass(frozen=True, eq=False)
class D1:
    U: np.ndarray
    c: float

    def __post_init__(self):
        object.__setattr__(self, "U", as_unitary(self.U))
        object.__setattr__(self, "c", _nonneg("c", self.c))

    def __call__(self, a):
        return apply_seq(self, a)


@dataclass(frozen=True, eq=False)
class D2:
    V: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "V", as_unitary(self.V))

    def __call__(self, a):
        return apply_seq(self, a)


@dataclass(frozen=True, eq=False)
class D3:
    V: np.ndarray
    d: float

    def __post_init__(self):
        object.__setattr__(self, "V", as_unitary(self.V))
        if not float(self.d) > 1:
            raise InvalidArgument(f"d must exceed 1, got {self.d}")
        object.__setattr__(self, "d", float(self.d))

    def __call__(self, a):
        return apply_seq(self, a)


@dataclass(frozen=True, eq=False)
class D4:
    W: np.ndarray
    c1: float
    c2: float

    def __post_init__(self):
        object.__setattr__(self, "W", as_unitary(self.W))
        object.__setattr__(self, "c1", _nonneg("c1", self.c1))
        object.__setattr__(self, "c2", _nonneg("c2", self.c2))

    def __call__(self, a):
        return apply_seq(self, a)

    def normalized(self):
        if self.c1 >= self.c2:
            return self
        return D4(self.W[:, ::-1], self.c2, self.c1)


@dataclass(frozen=True, eq=False)
class RankOneImage:
    """``A -> W diag(Det(A)**c, 0) W*``; not in the unital list, arises from ``phi(I)`` of rank one."""

    W: np.ndarray
    c: float

    def __post_init__(self):
        object.__setattr__(self, "W", as_unitary(self.W))
        object.__setattr__(self, "c", _nonneg("c", self.c))

    def __call__(self, a):
        return apply_seq(self, a)


SeqForm = (SeqZero, D1, D2, D3, D4, RankOneImage)


# -- algebra -------------------------------------------------------------------

def seq_product(a, b, tol=DEFAULT_TOL):
    a = as_effect(a, tol)
    b = as_effect(b, tol)
    r = msqrt(a, tol)
    return r @ b @ r


def order_leq(a, b, tol=DEFAULT_TOL):
    """``a <= b`` in the Loewner order."""
    diff = as_herm(b, tol) - as_herm(a, tol)
    return bool(np.all(eigvalsh2(diff)[1] >= -tol.tol_pd))


def seq_factor(a, b, tol=DEFAULT_TOL):
    """The effect ``C`` with ``b o C = a``, for ``a <= b`` and invertible ``b``."""
    a = as_effect(a, tol)
    b = as_effect(b, tol)
    if not order_leq(a, b, tol):
        raise NotDominated("a <= b does not hold")
    if eigvalsh2(b)[1] <= tol.tol_pd:
        raise SingularBase("dominating effect is not invertible")
    r = inv2(msqrt(b, tol), tol)
    c = r @ a @ r
    return 0.5 * (c + dagger(c))


def commute_iff_seq_commute(a, b, tol=DEFAULT_TOL):
    """``(AB == BA, A o B == B o A)``; the two answers always agree for effects."""
    a = as_effect(a, tol)
    b = as_effect(b, tol)
    scale = max(1.0, float(np.linalg.norm(a) * np.linalg.norm(b)))
    plain = np.linalg.norm(a @ b - b @ a) <= tol.tol_eq * scale
    seq = np.linalg.norm(seq_product(a, b, tol) - seq_product(b, a, tol)) <= tol.tol_eq * scale
    return bool(plain), bool(seq)


def _det_pow(d, expo):
    return np.maximum(d, 0.0) ** expo


def apply_seq(s, a, tol=DEFAULT_TOL):
    """Evaluate a sequential form.

    Effects with ``Det A <= tol.tol_pd`` are treated as singular (``Det A = 0``)
    by every form, so that rounding in the determinant of a rank-one input is
    not amplified by small positive powers.
    """
    a = as_effect(a, tol)
    d = det2(a).real
    d = np.where(d > tol.tol_pd, d, 0.0)
    if isinstance(s, SeqZero):
        return np.zeros_like(a)
    if isinstance(s, D1):
        return _det_pow(d, s.c)[..., None, None] * (s.U @ a @ dagger(s.U))
    if isinstance(s, D2):
        return s.V @ adj2(a) @ dagger(s.V)
    if isinstance(s, D3):
        # D**d A^-1 = D**(d-1) adj A, and exactly 0 on singular effects
        scale = np.where(d > 0, _det_pow(d, s.d - 1.0), 0.0)[..., None, None]
        return scale * (s.V @ adj2(a) @ dagger(s.V))
    if isinstance(s, (D4, RankOneImage)):
        diag = np.zeros(a.shape, dtype=complex)
        if isinstance(s, D4):
            diag[..., 0, 0] = _det_pow(d, s.c1)
            diag[..., 1, 1] = _det_pow(d, s.c2)
        else:
            diag[..., 0, 0] = _det_pow(d, s.c)
        return s.W @ diag @ dagger(s.W)
    raise TypeError(f"not a sequential form: {s!r}")


def seq_gauge_equal(s1, s2, tol=DEFAULT_TOL):
    """Whether two sequential forms define the same map on effects."""
    t = tol.tol_class
    if type(s1) is not type(s2):
        return False
    if isinstance(s1, SeqZero):
        return True
    if isinstance(s1, D1):
        return abs(s1.c - s2.c) <= t and _phase_distance(s1.U, s2.U) <= t
    if isinstance(s1, D2):
        return _phase_distance(s1.V, s2.V) <= t
    if isinstance(s1, D3):
        return abs(s1.d - s2.d) <= t and _phase_distance(s1.V, s2.V) <= t
    if isinstance(s1, RankOneImage):
        return abs(s1.c - s2.c) <= t and _phase_distance(s1.W[:, 0], s2.W[:, 0]) <= t
    a, b = s1.normalized(), s2.normalized()
    if abs(a.c1 - b.c1) > t or abs(a.c2 - b.c2) > t:
        return False
    return abs(a.c1 - a.c2) <= t or _phase_distance(a.W[:, 0], b.W[:, 0]) <= t


# -- black boxes -------------------------------------------------------------------

def evaluate_effects(phi, xs, tol=DEFAULT_TOL, vectorized=False):
    xs = np.asarray(xs, dtype=complex)
    if vectorized:
        ys = np.asarray(phi(xs), dtype=complex)
    else:
        ys = np.stack([np.asarray(phi(x), dtype=complex) for x in xs])
    try:
        return as_effect(ys, tol)
    except (NotEffect, NotHermitian) as exc:
        raise NotEffectValued(f"black box output is not an effect: {exc}") from exc


def _sample_pairs(gen, n):
    a = random_effect(gen, n)
    b = random_effect(gen, n)
    # a few exactly singular operands exercise the boundary of the algebra
    k = max(1, n // 10)
    a[:k] = random_rank_one_projection(gen, k) * gen.uniform(0, 1, (k, 1, 1))
    return a, b


def check_seq(phi, trials=50, seed=0, tol=DEFAULT_TOL, vectorized=False):
    """Worst relative deviation of ``phi(A o B)`` from ``phi(A) o phi(B)``."""
    if int(trials) < 1:
        raise InvalidArgument("trials must be >= 1")
    a, b = _sample_pairs(rng(seed), int(trials))
    pa = evaluate_effects(phi, a, tol, vectorized)
    pb = evaluate_effects(phi, b, tol, vectorized)
    lhs = evaluate_effects(phi, seq_product(a, b, tol), tol, vectorized)
    return relative_residual(lhs, seq_product(pa, pb, tol))


def extend_to_cone(phi, c, basis=None, tol=DEFAULT_TOL, trials=20, seed=0, vectorized=False):
    """Extend a homogeneous sequential endomorphism to the positive cone.

    With a real ``c`` the extension is ``Phi(A) = |A|**c phi(A/|A|)`` (spectral
    norm), valid when ``phi(t A) = t**c phi(A)``.  For maps with diagonal
    range in a basis ``W`` the two diagonal slots may scale differently; pass
    ``c = (c_a, c_b)`` together with ``basis=W`` to extend each slot with its
    own exponent.  Homogeneity is checked on samples first.
    """
    if basis is None:
        expo = np.array([float(c), float(c)])
        w = SIGMA0
    else:
        expo = np.asarray(c, dtype=float).reshape(2)
        w = as_unitary(basis, tol)

    def scale(x, t):
        half = np.asarray(t)[..., None] ** (expo / 2)
        return half[..., :, None] * (dagger(w) @ x @ w) * half[..., None, :]

    gen = rng(seed)
    a = random_effect(gen, trials, invertible=True)
    lam = gen.uniform(0.05, 1.0, trials)
    lhs = dagger(w) @ evaluate_effects(phi, lam[:, None, None] * a, tol, vectorized) @ w
    rhs = scale(evaluate_effects(phi, a, tol, vectorized), lam)
    res = relative_residual(lhs, rhs)
    if res > tol.tol_class:
        raise NotHomogeneous(f"map is not homogeneous with exponent {c} (residual {res:.3g})",
                             residual=res)

    def Phi(x):
        x = np.asarray(x, dtype=complex)
        single = x.ndim == 2
        xs = x[None] if single else x
        n = spec_norm(xs)
        y = evaluate_effects(phi, xs / n[:, None, None], tol, vectorized)
        out = w @ scale(y, n) @ dagger(w)
        return out[0] if single else out

    return Phi


# -- classification --------------------------------------------------------------

@dataclass
class SeqClassifyResult:
    form: object
    branch: str
    seq_residual: float = 0.0
    residual: float = 0.0
    jte_form: object = None
    jte_diagnostics: object = None
    boundary_residual: float = 0.0
    beyond_stated_list: bool = False
    extras: dict = field(default_factory=dict)


def _log_phi(phi, h, tol, vectorized):
    y = evaluate_effects(phi, mexp(h), tol, vectorized)
    try:
        return pauli_decompose(mlog(y, tol))
    except Exception as exc:
        raise LogFailure(f"image of an invertible effect is not invertible: {exc}") from exc


def _unital_linear_map(phi, trials, seed, tol, vectorized):
    """Matrix of ``f`` from ``g = log o phi o exp`` on ``{H <= 0}``, shifted by linearity."""
    f_id = -_log_phi(phi, -PAULI[:1], tol, vectorized)[0]
    cols = _log_phi(phi, PAULI[1:] - 2.0 * SIGMA0, tol, vectorized) + 2.0 * f_id
    F = LinMapH2(np.column_stack([f_id, cols.T]))
    h = random_herm(rng(seed), trials, max_norm=2.0)
    shift = np.maximum(eigvalsh2(h)[0], 0.0) + 1.0
    got = _log_phi(phi, h - shift[:, None, None] * SIGMA0, tol, vectorized)
    pred = pauli_decompose(h) @ F.F.T
    pred -= shift[:, None] * f_id
    err = np.linalg.norm(got - pred, axis=-1) / (1.0 + np.linalg.norm(pred, axis=-1))
    return F, float(np.max(err))


def _singular_probes(seed):
    p = np.zeros((3, 2, 2), dtype=complex)
    p[0, 0, 0] = 1.0
    p[1, 1, 1] = 1.0
    p[2] = random_rank_one_projection(rng(seed + 2))
    return p


def _classify_unital(phi, tol, trials, seed, vectorized):
    t = tol.tol_class
    F, lin = _unital_linear_map(phi, trials, seed, tol, vectorized)
    jte, jdiag = classify_linear_map(F, tol)
    jdiag.linearity_residual = lin
    boundary = 0.0

    def snap(x):
        return 0.0 if abs(x) <= t else x

    if isinstance(jte, B1):
        if jte.c < -t:
            raise NotEffectValued(f"exponent c = {jte.c:.6g} < 0 cannot map effects to effects")
        form = D1(jte.U, max(snap(jte.c), 0.0))
    elif isinstance(jte, B2):
        if jte.d < 1 - t:
            raise NotEffectValued(f"exponent d = {jte.d:.6g} < 1 cannot map effects to effects")
        if jte.d <= 1 + t:
            form = D2(jte.V)
        else:
            form = D3(jte.V, jte.d)
            probes = _singular_probes(seed)
            boundary = float(np.max(np.abs(evaluate_effects(phi, probes, tol, vectorized))))
            if boundary > t:
                raise NotSeqEndo(f"d > 1 but singular effects are not sent to 0 ({boundary:.3g})",
                                 residual=boundary)
    else:
        if min(jte.c1, jte.c2) < -t:
            raise NotEffectValued("negative determinant exponent cannot map effects to effects")
        form = D4(jte.W, max(snap(jte.c1), 0.0), max(snap(jte.c2), 0.0))
    return form, jte, jdiag, boundary


def classify_seq(phi, tol=DEFAULT_TOL, trials=50, seed=0, vectorized=False, verify=50):
    """Recover the canonical form of a black-box continuous sequential endomorphism."""
    t = tol.tol_class
    seq_res = check_seq(phi, trials, seed, tol, vectorized)
    if seq_res > t:
        raise NotSeqEndo(f"sequential law violated (residual {seq_res:.3g})", residual=seq_res)
    q = evaluate_effects(phi, SIGMA0[None], tol, vectorized)[0]
    idem = float(np.max(np.abs(q @ q - q)))
    if idem > t:
        raise NotProjectionAtI(f"phi(I) is not a projection (residual {idem:.3g})", residual=idem)
    rank = int(round(float(np.trace(q).real)))

    if rank == 0:
        result = SeqClassifyResult(SeqZero(), "zero", seq_res, beyond_stated_list=True)
    elif rank == 2:
        form, jte, jdiag, boundary = _classify_unital(phi, tol, trials, seed, vectorized)
        result = SeqClassifyResult(form, jdiag.branch, seq_res, jte_form=jte, jte_diagnostics=jdiag,
                                   boundary_residual=boundary)
    else:
        _, _, wq = eig2(q, tol)

        def psi(x):
            return np.asarray(phi(x)) + (SIGMA0 - q)

        inner, jte, jdiag, _ = _classify_unital(psi, tol, trials, seed, vectorized)
        if not isinstance(inner, D4):
            raise NotEffectValued(f"rank-one phi(I) but unitized map is {type(inner).__name__}")
        inner = inner.normalized()
        if abs(inner.c1 - inner.c2) <= t:
            c_q, c_other = inner.c1, inner.c2
        elif _phase_distance(inner.W[:, 0], wq[:, 0]) <= t:
            c_q, c_other = inner.c1, inner.c2
        else:
            c_q, c_other = inner.c2, inner.c1
        if abs(c_other) > t:
            raise NotEffectValued("complement of phi(I) must carry exponent 0")
        result = SeqClassifyResult(RankOneImage(wq, c_q), "rank_one", seq_res, jte_form=jte,
                                   jte_diagnostics=jdiag, beyond_stated_list=True)

    gen = rng(seed + 1)
    a = np.concatenate([random_effect(gen, verify), _singular_probes(seed)])
    result.residual = relative_residual(apply_seq(result.form, a, tol),
                                        evaluate_effects(phi, a, tol, vectorized))
    return result
