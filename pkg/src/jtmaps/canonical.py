"""Canonical continuous Jordan triple endomorphisms of the 2x2 positive cone.

Three families, with ``D = Det A``:

* ``B1(U, c)``:        A -> D**c  * U A U*
* ``B2(V, d)``:        A -> D**d  * V A^-1 V*
* ``B3(W, c1, c2)``:   A -> W diag(D**c1, D**c2) W*

Each form is a frozen value that can be applied to a single matrix or to a
stack of them (shape ``(..., 2, 2)``).
"""

from dataclasses import dataclass

import numpy as np

from .mat2 import (DEFAULT_TOL, SIGMA0, SIGMA_X, SIGMA_Y, SIGMA_Z, adj2, as_pd, as_unitary,
                   dagger, det2, mexp, sandwich)

__all__ = [
    "B1", "B2", "B3", "JTEForm", "apply", "jordan_triple", "compose", "gauge_equal",
    "is_automorphism", "det_exponent", "transpose_as_b2", "TRANSPOSE_UNITARY",
    "PROBES", "relative_residual",
]

TRANSPOSE_UNITARY = np.array([[0, 1], [-1, 0]], dtype=complex)


def _unitary(m):
    return as_unitary(np.array(m, dtype=complex))


@dataclass(frozen=True, eq=False)
class B1:
    U: np.ndarray
    c: float

    def __post_init__(self):
        object.__setattr__(self, "U", _unitary(self.U))
        object.__setattr__(self, "c", float(self.c))

    def __call__(self, a):
        return apply(self, a)


@dataclass(frozen=True, eq=False)
class B2:
    V: np.ndarray
    d: float

    def __post_init__(self):
        object.__setattr__(self, "V", _unitary(self.V))
        object.__setattr__(self, "d", float(self.d))

    def __call__(self, a):
        return apply(self, a)


@dataclass(frozen=True, eq=False)
class B3:
    W: np.ndarray
    c1: float
    c2: float

    def __post_init__(self):
        object.__setattr__(self, "W", _unitary(self.W))
        object.__setattr__(self, "c1", float(self.c1))
        object.__setattr__(self, "c2", float(self.c2))

    def __call__(self, a):
        return apply(self, a)

    def normalized(self):
        """Equivalent form with ``c1 >= c2`` (columns of ``W`` swapped to match)."""
        if self.c1 >= self.c2:
            return self
        return B3(self.W[:, ::-1], self.c2, self.c1)


JTEForm = (B1, B2, B3)


def _pow_det(a, expo):
    d = det2(a).real
    return (np.maximum(d, 0.0) ** expo)[..., None, None]


def apply(e, a, tol=DEFAULT_TOL):
    a = as_pd(a, tol)
    if isinstance(e, B1):
        return _pow_det(a, e.c) * (e.U @ a @ dagger(e.U))
    if isinstance(e, B2):
        d = det2(a).real[..., None, None]
        # D**d * A^-1 = D**(d-1) * adj A
        return d ** (e.d - 1.0) * (e.V @ adj2(a) @ dagger(e.V))
    if isinstance(e, B3):
        d = det2(a).real
        diag = np.zeros(a.shape, dtype=complex)
        diag[..., 0, 0] = d ** e.c1
        diag[..., 1, 1] = d ** e.c2
        return e.W @ diag @ dagger(e.W)
    raise TypeError(f"not a JTE form: {e!r}")


def jordan_triple(a, b, tol=DEFAULT_TOL):
    return sandwich(as_pd(a, tol), as_pd(b, tol))


def det_exponent(e):
    """``k`` such that ``Det(e(A)) = Det(A)**k``."""
    if isinstance(e, B1):
        return 2 * e.c + 1
    if isinstance(e, B2):
        return 2 * e.d - 1
    return e.c1 + e.c2


def compose(e2, e1):
    """The canonical form of ``A -> e2(e1(A))``."""
    k = det_exponent(e1)
    if isinstance(e2, B3):
        return B3(e2.W, e2.c1 * k, e2.c2 * k).normalized()
    if isinstance(e2, B1):
        u2, c2 = e2.U, e2.c
        if isinstance(e1, B1):
            return B1(u2 @ e1.U, e1.c + c2 * k)
        if isinstance(e1, B2):
            return B2(u2 @ e1.V, e1.d + c2 * k)
        return B3(u2 @ e1.W, e1.c1 + c2 * k, e1.c2 + c2 * k).normalized()
    v2, d2 = e2.V, e2.d
    if isinstance(e1, B1):
        return B2(v2 @ e1.U, d2 * k - e1.c)
    if isinstance(e1, B2):
        return B1(v2 @ e1.V, d2 * k - e1.d)
    return B3(v2 @ e1.W, d2 * k - e1.c1, d2 * k - e1.c2).normalized()


def _probe_set():
    probes = [mexp(s * p / 2) for p in (SIGMA_X, SIGMA_Y, SIGMA_Z) for s in (1, -1)]
    probes += [np.e * SIGMA0, SIGMA0 / np.e]
    return np.stack(probes)


PROBES = _probe_set()


def relative_residual(x, y):
    """``max |x - y|_F / (1 + |y|_F)`` over a stack of matrices."""
    num = np.linalg.norm(np.asarray(x) - np.asarray(y), axis=(-2, -1))
    den = 1.0 + np.linalg.norm(np.asarray(y), axis=(-2, -1))
    return float(np.max(num / den))


def _phase_distance(x, y):
    """``min over |z| = 1 of max|y - z x|`` (entrywise)."""
    ov = np.vdot(x, y)
    z = ov / abs(ov) if abs(ov) > 0 else 1.0
    return float(np.max(np.abs(y - z * x)))


def gauge_equal(e1, e2, tol=DEFAULT_TOL):
    """Whether two canonical forms define the same map.

    Within a family the parameters are compared up to their gauge freedom
    (a global phase of the unitary; column phases and permutations of ``W``).
    Forms from different families are compared on the fixed probe set.
    """
    t = tol.tol_class
    if isinstance(e1, B1) and isinstance(e2, B1):
        return abs(e1.c - e2.c) <= t and _phase_distance(e1.U, e2.U) <= t
    if isinstance(e1, B2) and isinstance(e2, B2):
        return abs(e1.d - e2.d) <= t and _phase_distance(e1.V, e2.V) <= t
    if isinstance(e1, B3) and isinstance(e2, B3):
        a, b = e1.normalized(), e2.normalized()
        if abs(a.c1 - b.c1) > t or abs(a.c2 - b.c2) > t:
            return False
        if abs(a.c1 - a.c2) <= t:
            return True
        return _phase_distance(a.W[:, 0], b.W[:, 0]) <= t
    return relative_residual(apply(e1, PROBES), apply(e2, PROBES)) <= t


def is_automorphism(e):
    """Bijectivity criterion: ``c != -1/2`` for B1, ``d != 1/2`` for B2, never for B3."""
    if isinstance(e, B1):
        return e.c != -0.5
    if isinstance(e, B2):
        return e.d != 0.5
    return False


def transpose_as_b2():
    """The unitary ``J`` with ``A^tr = Det(A) J A^-1 J*``, and a residual check.

    The returned callable gives the relative residual of the identity on a
    (stack of) positive definite matrices.
    """
    j = TRANSPOSE_UNITARY.copy()
    form = B2(j, 1.0)

    def check(a):
        a = as_pd(a)
        return relative_residual(apply(form, a), np.swapaxes(a, -1, -2))

    return j, check
