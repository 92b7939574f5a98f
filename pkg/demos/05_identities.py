"""Numerical identities used by the classification argument.

The sandwich exp(s/2 sx) exp(t sy) exp(s/2 sx) has a closed form and unit
determinant; the determinant built from g and h is nonzero, which is what
makes those two functions independent.
"""

from jtmaps.proofcheck import GH_DET_GOLDEN, gh_independence_det, limit_checks, n_aux, run_identities

report = run_identities(1000)
for name, check in report["checks"].items():
    print(f"{name:24s} {'ok' if check['passed'] else 'FAILED'}")
print("N(1, 1) =", n_aux(1.0, 1.0))
print("gh determinant =", gh_independence_det(), "(high-precision value", GH_DET_GOLDEN, ")")
print("arccosh(cosh^2 t)/t at t = 10, 20, 40:", limit_checks()["limit_one"])
