"""Closed-form algebra of 2x2 complex matrices.

Matrices are plain ``numpy`` arrays of shape ``(..., 2, 2)`` (complex128);
every function here broadcasts over the leading axes.  Hermitian matrices
are parametrized by their coordinates in the orthonormal basis

    sigma_0 = I,  sigma_x = [[0, 1], [1, 0]],
    sigma_y = [[0, i], [-i, 0]],  sigma_z = [[1, 0], [0, -1]]

with respect to the inner product <X, Y> = Tr(XY) / 2.  Note the sign of
``sigma_y``: it is the negative of the usual physics convention, and it is
used consistently throughout the package.

Spectral functions (exp, log, sqrt, real powers) are evaluated with the
two-point Sylvester formula

    g(H) = (g(l1) + g(l2)) / 2 * I + [g(l1) - g(l2)] / (l1 - l2) * (H - a0 I)

where the divided difference is computed in a cancellation-free way for each
``g``.  No iterative eigensolver is involved.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian, NotPositiveDefinite, NotPSD, NotEffect, Singular, NotUnitary

__all__ = [
    "SIGMA0", "SIGMA_X", "SIGMA_Y", "SIGMA_Z", "PAULI", "Tolerances", "DEFAULT_TOL",
    "as_herm", "as_pd", "as_psd", "as_effect", "as_unitary", "is_pd", "is_effect",
    "pauli_decompose", "pauli_recompose", "hs_inner", "hs_norm", "spec_norm",
    "eigvalsh2", "eig2", "mexp", "mexp_traceless", "mlog", "msqrt", "mpow",
    "det2", "tr2", "adj2", "inv2", "mul2", "transpose2", "conj2", "dagger",
    "sandwich",
]

SIGMA0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, 1j], [-1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.stack([SIGMA0, SIGMA_X, SIGMA_Y, SIGMA_Z])


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by all modules.

    ``tol_herm`` is applied relative to ``max(1, max|entry|)``; ``tol_pd`` is an
    absolute eigenvalue floor; ``tol_eq`` is a relative equality tolerance;
    ``tol_class`` gates the classifier's decisions.
    """

    tol_herm: float = 1e-12
    tol_pd: float = 1e-12
    tol_eq: float = 1e-9
    tol_class: float = 1e-6

    def __post_init__(self):
        for name in ("tol_herm", "tol_pd", "tol_eq", "tol_class"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


DEFAULT_TOL = Tolerances()


# -- elementary operations --------------------------------------------------

def dagger(m):
    return np.conj(np.swapaxes(m, -1, -2))


def transpose2(m):
    return np.swapaxes(m, -1, -2)


def conj2(m):
    return np.conj(m)


def mul2(a, b):
    return np.matmul(a, b)


def sandwich(a, b):
    """``a @ b @ a``, the Jordan triple product."""
    return a @ b @ a


def tr2(m):
    return m[..., 0, 0] + m[..., 1, 1]


def det2(m):
    return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]


def adj2(m):
    """Adjugate; for 2x2 matrices ``adj A = (Tr A) I - A``."""
    m = np.asarray(m)
    out = np.empty(np.broadcast_shapes(m.shape), dtype=np.result_type(m, complex))
    out[..., 0, 0] = m[..., 1, 1]
    out[..., 1, 1] = m[..., 0, 0]
    out[..., 0, 1] = -m[..., 0, 1]
    out[..., 1, 0] = -m[..., 1, 0]
    return out


def inv2(m, tol=DEFAULT_TOL):
    d = det2(m)
    if np.any(np.abs(d) <= tol.tol_pd):
        raise Singular(f"matrix is singular (|det| = {np.min(np.abs(d)):.3g})")
    return adj2(m) / np.asarray(d)[..., None, None]


# -- Hermitian structure ----------------------------------------------------

def _hermitian_part(m):
    m = np.asarray(m, dtype=complex)
    return 0.5 * (m + dagger(m))


def as_herm(m, tol=DEFAULT_TOL):
    """Validate Hermiticity and return the exactly symmetrized matrix."""
    m = np.asarray(m, dtype=complex)
    if m.shape[-2:] != (2, 2):
        raise NotHermitian(f"expected shape (..., 2, 2), got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NotHermitian("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(m), initial=0.0)))
    if np.max(np.abs(m - dagger(m)), initial=0.0) > tol.tol_herm * scale:
        raise NotHermitian("matrix is not Hermitian")
    return _hermitian_part(m)


def pauli_decompose(h):
    """Coordinates ``(a0, ax, ay, az)`` with ``a_i = Tr(h sigma_i) / 2``.

    For non-Hermitian input the coordinates of the Hermitian part are returned.
    """
    h = np.asarray(h, dtype=complex)
    h00 = h[..., 0, 0].real
    h11 = h[..., 1, 1].real
    off = 0.5 * (h[..., 0, 1] + np.conj(h[..., 1, 0]))
    return np.stack([0.5 * (h00 + h11), off.real, off.imag, 0.5 * (h00 - h11)], axis=-1)


def pauli_recompose(c):
    c = np.asarray(c, dtype=float)
    a0, ax, ay, az = c[..., 0], c[..., 1], c[..., 2], c[..., 3]
    out = np.empty(c.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = a0 + az
    out[..., 1, 1] = a0 - az
    out[..., 0, 1] = ax + 1j * ay
    out[..., 1, 0] = ax - 1j * ay
    return out


def hs_inner(x, y):
    """``Tr(xy) / 2`` for Hermitian ``x, y`` (a real number)."""
    return 0.5 * np.real(np.einsum("...ij,...ji->...", x, y))


def hs_norm(x):
    return np.linalg.norm(pauli_decompose(x), axis=-1)


def eigvalsh2(h):
    """Eigenvalues ``(l1, l2)``, ``l1 >= l2``, of a Hermitian matrix.

    The root of larger magnitude is taken from ``a0 +- r``; the other one from
    ``det / root`` so that diagonal and well-separated inputs do not suffer
    cancellation.
    """
    c = pauli_decompose(h)
    a0 = c[..., 0]
    r = np.linalg.norm(c[..., 1:], axis=-1)
    h = np.asarray(h, dtype=complex)
    det = h[..., 0, 0].real * h[..., 1, 1].real - np.abs(0.5 * (h[..., 0, 1] + np.conj(h[..., 1, 0]))) ** 2
    pos = a0 >= 0
    big = np.where(pos, a0 + r, a0 - r)
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.where(big != 0, det / np.where(big != 0, big, 1.0), 0.0)
    # det/big can drift outside [a0 - r, a0 + r] by rounding; keep the ordering.
    l1 = np.where(pos, big, np.maximum(small, big))
    l2 = np.where(pos, np.minimum(small, big), big)
    return l1, l2


def spec_norm(x):
    l1, l2 = eigvalsh2(x)
    return np.maximum(np.abs(l1), np.abs(l2))


def _gauge_column(v):
    k = 0 if abs(v[0]) > 0 else 1
    ph = v[k] / abs(v[k])
    return v / ph


def eig2(h, tol=DEFAULT_TOL):
    """Spectral decomposition ``h = u diag(l1, l2) u*`` of one Hermitian matrix.

    Columns are ordered by descending eigenvalue and gauge fixed: the first
    nonzero component of each column is real and non-negative.  For a
    degenerate spectrum ``u`` is the identity.
    """
    h = as_herm(h, tol)
    l1, l2 = (float(v) for v in eigvalsh2(h))
    if abs(l1 - l2) <= tol.tol_pd * max(1.0, abs(l1)):
        return l1, l2, np.eye(2, dtype=complex)
    a, b, d = h[0, 0].real, h[0, 1], h[1, 1].real
    cand1 = np.array([b, l1 - a])
    cand2 = np.array([l1 - d, np.conj(b)])
    v = cand1 if np.linalg.norm(cand1) >= np.linalg.norm(cand2) else cand2
    v = _gauge_column(v / np.linalg.norm(v))
    w = _gauge_column(np.array([-np.conj(v[1]), np.conj(v[0])]))
    return l1, l2, np.column_stack([v, w])


# -- spectral calculus -------------------------------------------------------

def _assemble(mean, dd, c):
    coords = np.concatenate([mean[..., None], dd[..., None] * c[..., 1:]], axis=-1)
    return pauli_recompose(coords)


def mexp(h):
    """Matrix exponential of a Hermitian matrix (positive definite result)."""
    c = pauli_decompose(h)
    l1, l2 = eigvalsh2(h)
    gap = l1 - l2
    e2 = np.exp(l2)
    mean = 0.5 * (np.exp(l1) + e2)
    with np.errstate(divide="ignore", invalid="ignore"):
        dd = np.where(gap > 0, e2 * np.expm1(gap) / np.where(gap > 0, gap, 1.0), e2)
    return _assemble(mean, dd, c)


def mexp_traceless(x):
    """``cosh|X| I + sinh|X| X/|X|`` for traceless Hermitian ``X``."""
    c = pauli_decompose(x)
    n = np.linalg.norm(c[..., 1:], axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        shc = np.where(n > 0, np.sinh(n) / np.where(n > 0, n, 1.0), 1.0)
    return _assemble(np.cosh(n), shc, c)


def as_pd(p, tol=DEFAULT_TOL):
    p = as_herm(p, tol)
    l1, l2 = eigvalsh2(p)
    if np.any(l2 <= tol.tol_pd):
        raise NotPositiveDefinite(f"not positive definite (min eigenvalue {np.min(l2):.3g})")
    return p


def as_psd(p, tol=DEFAULT_TOL):
    p = as_herm(p, tol)
    _, l2 = eigvalsh2(p)
    if np.any(l2 < -tol.tol_pd):
        raise NotPSD(f"not positive semi-definite (min eigenvalue {np.min(l2):.3g})")
    return p


def as_effect(a, tol=DEFAULT_TOL):
    a = as_herm(a, tol)
    l1, l2 = eigvalsh2(a)
    if np.any(l2 < -tol.tol_pd) or np.any(l1 > 1 + tol.tol_pd):
        raise NotEffect("not an effect (eigenvalues must lie in [0, 1])")
    return a


def is_pd(p, tol=DEFAULT_TOL):
    try:
        as_pd(p, tol)
    except (NotHermitian, NotPositiveDefinite):
        return False
    return True


def is_effect(a, tol=DEFAULT_TOL):
    try:
        as_effect(a, tol)
    except (NotHermitian, NotEffect):
        return False
    return True


def as_unitary(u, tol=DEFAULT_TOL):
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or not np.all(np.isfinite(u)):
        raise NotUnitary("expected a finite 2x2 matrix")
    if np.max(np.abs(u @ dagger(u) - SIGMA0)) > tol.tol_eq:
        raise NotUnitary("matrix is not unitary")
    return u


def mlog(p, tol=DEFAULT_TOL):
    """Principal logarithm of a positive definite matrix."""
    p = as_pd(p, tol)
    c = pauli_decompose(p)
    a0 = c[..., 0]
    r = np.linalg.norm(c[..., 1:], axis=-1)
    l1, l2 = eigvalsh2(p)
    mean = 0.5 * (np.log(l1) + np.log(l2))
    x = r / a0
    with np.errstate(divide="ignore", invalid="ignore"):
        rs = np.where(r > 0, r, 1.0)
        # atanh(r/a0) = log(l1/l2)/2; the atanh form is accurate for small r.
        dd = np.where(x < 0.5, np.where(r > 0, np.arctanh(x) / rs, 1.0 / a0),
                      0.5 * np.log(l1 / l2) / rs)
    return _assemble(mean, dd, c)


def msqrt(p, tol=DEFAULT_TOL):
    """Positive semi-definite square root.

    Eigenvalues at or below ``tol.tol_pd`` are taken as exactly zero, so the
    root of a (numerically) rank-one matrix is rank one.
    """
    p = as_psd(p, tol)
    c = pauli_decompose(p)
    l1, l2 = eigvalsh2(p)
    s1 = np.sqrt(np.where(l1 > tol.tol_pd, l1, 0.0))
    s2 = np.sqrt(np.where(l2 > tol.tol_pd, l2, 0.0))
    tot = s1 + s2
    with np.errstate(divide="ignore", invalid="ignore"):
        dd = np.where(tot > 0, 1.0 / np.where(tot > 0, tot, 1.0), 0.0)
    return _assemble(0.5 * tot, dd, c)


def mpow(p, exponent, tol=DEFAULT_TOL):
    """Real power of a positive definite matrix."""
    p = as_pd(p, tol)
    c = pauli_decompose(p)
    l1, l2 = eigvalsh2(p)
    gap = l1 - l2
    lg = np.log(l1 / l2)
    q2 = l2 ** exponent
    mean = 0.5 * (l1 ** exponent + q2)
    with np.errstate(divide="ignore", invalid="ignore"):
        dd = np.where(gap > 0, q2 * np.expm1(exponent * lg) / np.where(gap > 0, gap, 1.0),
                      exponent * l2 ** (exponent - 1))
    return _assemble(mean, dd, c)
