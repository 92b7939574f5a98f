"""The double cover SU(2) -> SO(3) in Pauli coordinates, and its lift.

A special unitary ``u`` acts on Hermitian matrices by ``h -> u h u*``; this
fixes the ``sigma_0`` coordinate and rotates ``(ax, ay, az)`` by
``R[j, k] = Tr(sigma_j u sigma_k u*) / 2``.  Coordinates are taken in the
package's basis, whose ``sigma_y`` has the opposite sign to the textbook
one, so the familiar quaternion formulas hold only after conjugating ``R``
by ``diag(1, -1, 1)``.
"""

import numpy as np

from .errors import NotRotation, NotUnitary
from .mat2 import DEFAULT_TOL, PAULI, SIGMA0, SIGMA_X, SIGMA_Z, dagger, det2

_FLIP = np.diag([1.0, -1.0, 1.0])
# textbook sigma_y = -SIGMA_Y
_SIGMA_Y_STD = np.array([[0, -1j], [1j, 0]])


def as_su2(u, tol=DEFAULT_TOL):
    u = np.asarray(u, dtype=complex)
    if u.shape[-2:] != (2, 2):
        raise NotUnitary(f"expected shape (..., 2, 2), got {u.shape}")
    if np.max(np.abs(u @ dagger(u) - SIGMA0)) > tol.tol_eq:
        raise NotUnitary("matrix is not unitary")
    if np.max(np.abs(det2(u) - 1.0)) > tol.tol_eq:
        raise NotUnitary("determinant is not 1")
    return u


def su2_to_so3(u):
    """Rotation of Pauli coordinates induced by ``h -> u h u*``.

    Broadcasts over leading axes.  Any unitary is accepted (a global phase
    does not change the rotation).
    """
    u = np.asarray(u, dtype=complex)
    conj = u[..., None, :, :] @ PAULI[1:] @ dagger(u)[..., None, :, :]
    # R[j, k] = Tr(sigma_j conj_k) / 2
    return 0.5 * np.real(np.einsum("jab,...kba->...jk", PAULI[1:], conj))


def as_rotation(r, tol):
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3) or not np.all(np.isfinite(r)):
        raise NotRotation("expected a finite 3x3 matrix")
    if np.max(np.abs(r.T @ r - np.eye(3))) > tol:
        raise NotRotation("matrix is not orthogonal")
    if abs(np.linalg.det(r) - 1.0) > tol:
        raise NotRotation("determinant is not +1")
    return r


def gauge_su2(u):
    """Pick the sign of ``u`` (``u`` and ``-u`` cover the same rotation).

    The first of ``(Re u00, Im u00, Re u01, Im u01)`` with magnitude above
    1e-8 is made positive.
    """
    u = np.asarray(u, dtype=complex)
    for x in (u[0, 0].real, u[0, 0].imag, u[0, 1].real, u[0, 1].imag):
        if abs(x) > 1e-8:
            return u if x > 0 else -u
    return u


def _quaternion(r):
    # Branch on the largest of the four squared quaternion components.
    t = np.trace(r)
    cands = [1 + t, 1 + r[0, 0] - r[1, 1] - r[2, 2], 1 - r[0, 0] + r[1, 1] - r[2, 2],
             1 - r[0, 0] - r[1, 1] + r[2, 2]]
    k = int(np.argmax(cands))
    s = 2.0 * np.sqrt(cands[k])
    if k == 0:
        q = [s / 4, (r[2, 1] - r[1, 2]) / s, (r[0, 2] - r[2, 0]) / s, (r[1, 0] - r[0, 1]) / s]
    elif k == 1:
        q = [(r[2, 1] - r[1, 2]) / s, s / 4, (r[0, 1] + r[1, 0]) / s, (r[0, 2] + r[2, 0]) / s]
    elif k == 2:
        q = [(r[0, 2] - r[2, 0]) / s, (r[0, 1] + r[1, 0]) / s, s / 4, (r[1, 2] + r[2, 1]) / s]
    else:
        q = [(r[1, 0] - r[0, 1]) / s, (r[0, 2] + r[2, 0]) / s, (r[1, 2] + r[2, 1]) / s, s / 4]
    q = np.array(q)
    return q / np.linalg.norm(q)


def so3_to_su2(r, tol=DEFAULT_TOL, check_tol=None):
    """A special unitary covering the rotation ``r``, sign fixed by :func:`gauge_su2`.

    ``check_tol`` (default ``tol.tol_eq``) bounds the allowed deviation of
    ``r`` from SO(3).
    """
    r = as_rotation(r, tol.tol_eq if check_tol is None else check_tol)
    q0, q1, q2, q3 = _quaternion(_FLIP @ r @ _FLIP)
    u = q0 * SIGMA0 - 1j * (q1 * SIGMA_X + q2 * _SIGMA_Y_STD + q3 * SIGMA_Z)
    return gauge_su2(u)
