"""Seeded random matrices used by the verification suites and the CLI.

All generators take a ``numpy.random.Generator``; ``rng(seed)`` builds the
package's standard one (PCG64, which is portable across platforms).
"""

import numpy as np

from .mat2 import dagger, mexp, pauli_recompose


def rng(seed=0):
    return np.random.Generator(np.random.PCG64(seed))


def random_unitary(gen, size=None):
    """Haar-distributed 2x2 unitaries (QR of a complex Ginibre matrix)."""
    shape = () if size is None else (size,)
    z = (gen.standard_normal(shape + (2, 2)) + 1j * gen.standard_normal(shape + (2, 2))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def random_su2(gen, size=None):
    """Haar-distributed elements of SU(2): unit quaternions on S^3."""
    shape = () if size is None else (size,)
    q = gen.standard_normal(shape + (4,))
    q /= np.linalg.norm(q, axis=-1, keepdims=True)
    a = q[..., 0] + 1j * q[..., 1]
    b = q[..., 2] + 1j * q[..., 3]
    out = np.empty(shape + (2, 2), dtype=complex)
    out[..., 0, 0] = a
    out[..., 0, 1] = b
    out[..., 1, 0] = -np.conj(b)
    out[..., 1, 1] = np.conj(a)
    return out


def random_herm(gen, size=None, max_norm=1.0):
    """Hermitian matrices with Hilbert-Schmidt norm uniform-ish in the ball."""
    shape = () if size is None else (size,)
    c = gen.standard_normal(shape + (4,))
    c /= np.linalg.norm(c, axis=-1, keepdims=True)
    c *= max_norm * gen.uniform(0.0, 1.0, shape + (1,)) ** 0.25
    return pauli_recompose(c)


def random_traceless(gen, size=None, max_norm=1.0):
    h = random_herm(gen, size, max_norm)
    h[..., 0, 0] -= 0.5 * (h[..., 0, 0] + h[..., 1, 1])
    h[..., 1, 1] = -h[..., 0, 0]
    return h


def _with_spectrum(gen, l1, l2, size):
    u = random_unitary(gen, size)
    d = np.zeros(np.shape(l1) + (2, 2), dtype=complex)
    d[..., 0, 0] = l1
    d[..., 1, 1] = l2
    m = u @ d @ dagger(u)
    return 0.5 * (m + dagger(m))


def random_pd(gen, size=None, log_spread=2.0):
    """Positive definite matrices with spectrum in [e^-s, e^s]."""
    shape = () if size is None else (size,)
    lam = np.exp(gen.uniform(-log_spread, log_spread, shape + (2,)))
    return _with_spectrum(gen, lam[..., 0], lam[..., 1], size)


def random_pd_via_exp(gen, size=None, max_norm=2.0):
    return mexp(random_herm(gen, size, max_norm))


def random_effect(gen, size=None, invertible=False):
    """Effects (0 <= A <= I) with uniform eigenvalues in [0, 1] or (0.05, 1]."""
    shape = () if size is None else (size,)
    lo = 0.05 if invertible else 0.0
    lam = gen.uniform(lo, 1.0, shape + (2,))
    return _with_spectrum(gen, lam[..., 0], lam[..., 1], size)


def random_rank_one_projection(gen, size=None):
    u = random_unitary(gen, size)
    v = u[..., :, 0]
    return v[..., :, None] * np.conj(v[..., None, :])
