"""Recover the log-linear map behind a black-box Jordan triple endomorphism.

A continuous Jordan triple endomorphism ``phi`` of the positive cone has the
form ``phi(A) = exp(f(log A))`` for a linear ``f`` on Hermitian matrices.
Here ``f`` is represented by a real 4x4 matrix acting on Pauli coordinates;
column ``j`` holds the coordinates of ``f(sigma_j)``.

Black boxes are plain callables ``A -> phi(A)``.  By default they are called
on one matrix at a time; pass ``vectorized=True`` when the callable accepts
stacks of shape ``(n, 2, 2)`` (canonical forms do).
"""

from dataclasses import dataclass

import numpy as np

from .canonical import relative_residual
from .errors import InvalidArgument, NotHermitian, NotPositiveOutput, LogFailure
from .mat2 import DEFAULT_TOL, PAULI, as_herm, eigvalsh2, mexp, mlog, pauli_decompose, pauli_recompose, sandwich
from .sampling import random_herm, random_pd, rng

__all__ = ["LinMapH2", "LinearizeReport", "evaluate", "extract_f", "check_linearity",
           "check_jte", "commutativity_residual", "linearize"]


@dataclass(frozen=True, eq=False)
class LinMapH2:
    F: np.ndarray

    @property
    def f0_row(self):
        """``<f(sigma_j), sigma_0>`` for ``j = 0, x, y, z``."""
        return self.F[0]

    @property
    def v(self):
        return float(self.F[0, 0])

    @property
    def M(self):
        """Block of ``f`` on the traceless subspace."""
        return self.F[1:, 1:]

    def __call__(self, h):
        return pauli_recompose(pauli_decompose(h) @ self.F.T)


@dataclass(frozen=True)
class LinearizeReport:
    F: LinMapH2
    linearity_residual: float
    commutativity_residual: float
    jte_residual: float


def evaluate(phi, xs, tol=DEFAULT_TOL, vectorized=False):
    """Evaluate ``phi`` on a stack of matrices and validate positivity of the outputs."""
    xs = np.asarray(xs, dtype=complex)
    if vectorized:
        ys = np.asarray(phi(xs), dtype=complex)
    else:
        ys = np.stack([np.asarray(phi(x), dtype=complex) for x in xs])
    try:
        ys = as_herm(ys, tol)
    except NotHermitian as exc:
        raise NotPositiveOutput(f"black box output rejected: {exc}") from exc
    # outputs may live at any scale, so only strict positivity is required
    _, l2 = eigvalsh2(ys)
    if not np.all(l2 > 0):
        raise NotPositiveOutput(f"black box output rejected: not positive definite (min eigenvalue {np.min(l2):.3g})")
    return ys


def _log_outputs(phi, xs, tol, vectorized):
    ys = evaluate(phi, xs, tol, vectorized)
    try:
        return pauli_decompose(mlog(ys, tol))
    except Exception as exc:
        raise LogFailure(str(exc)) from exc


def extract_f(phi, tol=DEFAULT_TOL, vectorized=False):
    """Matrix of ``f`` from the four probes ``exp(sigma_j)``."""
    probes = mexp(PAULI)
    once = evaluate(phi, probes[1:2], tol, vectorized)
    cols = _log_outputs(phi, probes, tol, vectorized)
    if not np.array_equal(once, evaluate(phi, probes[1:2], tol, vectorized)):
        raise InvalidArgument("black box is not deterministic")
    return LinMapH2(cols.T.copy())


def _check_trials(trials):
    if int(trials) < 1:
        raise InvalidArgument("trials must be >= 1")
    return int(trials)


def check_linearity(phi, F, trials=50, seed=0, tol=DEFAULT_TOL, vectorized=False):
    """Worst relative deviation of ``log phi(exp h)`` from ``F h`` over random ``h``."""
    trials = _check_trials(trials)
    h = random_herm(rng(seed), trials, max_norm=2.0)
    got = _log_outputs(phi, mexp(h), tol, vectorized)
    pred = pauli_decompose(h) @ F.F.T
    err = np.linalg.norm(got - pred, axis=-1) / (1.0 + np.linalg.norm(pred, axis=-1))
    return float(np.max(err))


def check_jte(phi, trials=50, seed=0, tol=DEFAULT_TOL, vectorized=False):
    """Worst relative deviation of ``phi(ABA)`` from ``phi(A) phi(B) phi(A)``."""
    trials = _check_trials(trials)
    gen = rng(seed)
    a = random_pd(gen, trials)
    b = random_pd(gen, trials)
    pa = evaluate(phi, a, tol, vectorized)
    pb = evaluate(phi, b, tol, vectorized)
    lhs = evaluate(phi, sandwich(a, b), tol, vectorized)
    return relative_residual(lhs, sandwich(pa, pb))


def commutativity_residual(F, trials=50, seed=0):
    """How far ``f`` is from preserving commutativity, tested on ``(h, h^2)`` pairs."""
    trials = _check_trials(trials)
    h = random_herm(rng(seed), trials, max_norm=2.0)
    fh, fh2 = F(h), F(h @ h)
    comm = fh @ fh2 - fh2 @ fh
    scale = 1.0 + np.linalg.norm(fh, axis=(-2, -1)) * np.linalg.norm(fh2, axis=(-2, -1))
    return float(np.max(np.linalg.norm(comm, axis=(-2, -1)) / scale))


def linearize(phi, trials=50, seed=0, tol=DEFAULT_TOL, vectorized=False):
    F = extract_f(phi, tol, vectorized)
    return LinearizeReport(
        F=F,
        linearity_residual=check_linearity(phi, F, trials, seed, tol, vectorized),
        commutativity_residual=commutativity_residual(F, trials, seed),
        jte_residual=check_jte(phi, trials, seed, tol, vectorized),
    )
