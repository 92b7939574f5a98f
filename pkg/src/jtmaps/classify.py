"""Classify a black-box Jordan triple endomorphism into a canonical form.

The decision procedure works on the linear map ``f`` with
``phi(A) = exp(f(log A))``:

1. If ``f(I)`` is not a multiple of the identity, ``phi`` is diagonal in the
   eigenbasis ``W`` of ``f(I)`` and the exponents are half its eigenvalues
   (form B3).
2. Otherwise ``f(I) = v I``.  If ``f`` vanishes on traceless matrices the map
   is ``(Det A)**(v/2) I`` (B3 with equal exponents).
3. Otherwise the traceless block ``M`` must be ``p`` times an orthogonal
   matrix with ``p = 1``.  ``det M > 0`` gives B1 with ``U`` lifting ``M`` and
   ``c = (v - 1)/2``; ``det M < 0`` gives B2 with ``V`` lifting ``-M`` and
   ``d = (v + 1)/2``.
"""

from dataclasses import dataclass, field

import numpy as np

from .canonical import B1, B2, B3, apply, relative_residual
from .errors import NotIsometry, NotJTE, NotLinear, ScaleNotOne, ContractViolation
from .linearize import check_jte, check_linearity, evaluate, extract_f
from .mat2 import DEFAULT_TOL, dagger, eig2, pauli_recompose
from .sampling import random_pd, rng
from .spin import so3_to_su2

__all__ = ["ClassifyDiagnostics", "ClassifyResult", "classify_linear_map", "classify_jte", "explain"]

BRANCHES = ("nonscalar", "degenerate", "rotation", "reflection")


@dataclass
class ClassifyDiagnostics:
    branch: str
    v: float
    M: np.ndarray
    p: float = 0.0
    detM_sign: int = 0
    residual: float = 0.0
    f_identity_eigenvalues: tuple = ()
    consistency_residual: float = 0.0
    claim1_residual: float = 0.0
    isometry_residual: float = 0.0
    jte_residual: float = 0.0
    linearity_residual: float = 0.0
    extras: dict = field(default_factory=dict)


@dataclass
class ClassifyResult:
    form: object
    diagnostics: ClassifyDiagnostics


def _polar(m):
    u, _, vt = np.linalg.svd(m)
    return u @ vt


def classify_linear_map(F, tol=DEFAULT_TOL):
    """Case split on an extracted :class:`~jtmaps.linearize.LinMapH2`.

    Returns ``(form, diagnostics)``; the diagnostics' ``residual`` is left at 0
    (no black box is available here).
    """
    t = tol.tol_class
    A = F.F
    v = float(A[0, 0])
    M = A[1:, 1:].copy()
    claim1 = float(np.max(np.abs(A[0, 1:]), initial=0.0))
    fI_traceless = float(np.linalg.norm(A[1:, 0]))

    if fI_traceless > t * max(1.0, abs(v)):
        f_id = pauli_recompose(A[:, 0])
        mu1, mu2, w = eig2(f_id)
        # every f(sigma_j) must be diagonal in the eigenbasis of f(I)
        rot = dagger(w) @ pauli_recompose(A.T) @ w
        consistency = float(np.max(np.abs(rot[:, 0, 1])))
        diag = ClassifyDiagnostics("nonscalar", v, M, f_identity_eigenvalues=(mu1, mu2),
                                   consistency_residual=consistency, claim1_residual=claim1)
        return B3(w, mu1 / 2, mu2 / 2), diag

    if np.linalg.norm(M) <= t:
        diag = ClassifyDiagnostics("degenerate", v, M, claim1_residual=claim1)
        return B3(np.eye(2), v / 2, v / 2), diag

    p = float(np.mean(np.linalg.norm(M, axis=0)))
    iso = float(np.max(np.abs(M.T @ M - p * p * np.eye(3))))
    detM = float(np.linalg.det(M))
    sign = int(np.sign(detM))
    diag = ClassifyDiagnostics("rotation" if sign > 0 else "reflection", v, M, p=p, detM_sign=sign,
                               claim1_residual=claim1, isometry_residual=iso)
    if iso > t * max(1.0, p * p):
        err = NotIsometry(f"traceless block is not a scaled isometry (deviation {iso:.3g})", residual=iso, p=p)
        err.diagnostics = diag
        raise err
    if abs(p - 1.0) > t:
        err = ScaleNotOne(f"isometry scale p = {p:.6g} != 1; not a Jordan triple endomorphism",
                          residual=abs(p - 1.0), p=p)
        err.diagnostics = diag
        raise err
    q = _polar(M)
    if sign > 0:
        return B1(so3_to_su2(q), (v - 1) / 2), diag
    return B2(so3_to_su2(-q), (v + 1) / 2), diag


def classify_jte(phi, tol=DEFAULT_TOL, trials=50, seed=0, vectorized=False, verify=50):
    """Recover the canonical form of a black-box continuous Jordan triple endomorphism.

    Raises NotJTE or NotLinear when the sampled laws fail beyond
    ``tol.tol_class``; scale and isometry failures propagate from
    :func:`classify_linear_map`.
    """
    jte = check_jte(phi, trials, seed, tol, vectorized)
    if jte > tol.tol_class:
        raise NotJTE(f"Jordan triple law violated (residual {jte:.3g})", residual=jte)
    F = extract_f(phi, tol, vectorized)
    lin = check_linearity(phi, F, trials, seed, tol, vectorized)
    if lin > tol.tol_class:
        raise NotLinear(f"log-linearization failed (residual {lin:.3g})", residual=lin)
    form, diag = classify_linear_map(F, tol)
    diag.jte_residual = jte
    diag.linearity_residual = lin
    a = random_pd(rng(seed + 1), verify)
    diag.residual = max(relative_residual(apply(form, a), evaluate(phi, a, tol, vectorized)),
                        diag.consistency_residual)
    return ClassifyResult(form, diag)


def _describe_form(form):
    if isinstance(form, B1):
        return f"B1: (Det A)^c U A U*, c = {form.c:.9g}"
    if isinstance(form, B2):
        return f"B2: (Det A)^d V A^-1 V*, d = {form.d:.9g}"
    return f"B3: W diag((Det A)^c1, (Det A)^c2) W*, c1 = {form.c1:.9g}, c2 = {form.c2:.9g}"


def explain(result):
    """Human-readable trace of the decision path.

    Accepts a :class:`ClassifyResult` or one of the classifier's exceptions.
    """
    if isinstance(result, ContractViolation):
        lines = [f"rejected: {type(result).__name__}: {result}"]
        if result.residual is not None:
            lines.append(f"  residual = {result.residual:.6g}")
        if result.p is not None:
            lines.append(f"  p = {result.p:.9g}")
        return "\n".join(lines)
    d = result.diagnostics
    lines = [_describe_form(result.form)]
    if d.branch == "nonscalar":
        mu1, mu2 = d.f_identity_eigenvalues
        lines.append(f"  f(I) not scalar: eigenvalues of f(I) = {mu1:.9g}, {mu2:.9g}")
        lines.append(f"  diagonal consistency residual = {d.consistency_residual:.3g}")
    else:
        lines.append(f"  f(I) scalar: v = {d.v:.9g}")
        if d.branch == "degenerate":
            lines.append("  f vanishes on traceless matrices (M = 0)")
        else:
            lines.append(f"  det M {'> 0' if d.detM_sign > 0 else '< 0'}, p = {d.p:.9g}")
            lines.append(f"  isometry residual = {d.isometry_residual:.3g}")
        lines.append(f"  trace-row residual (trace part of f on traceless) = {d.claim1_residual:.3g}")
    lines.append(f"  Jordan triple residual = {d.jte_residual:.3g}")
    lines.append(f"  linearity residual = {d.linearity_residual:.3g}")
    lines.append(f"  verification residual = {d.residual:.3g}")
    return "\n".join(lines)
