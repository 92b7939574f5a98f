"""Recover the canonical form of a map known only through evaluations.

The classifier takes logarithms, reads off the linear map f with
phi(A) = exp(f(log A)) and walks the decision tree; explain() prints the
path it took.
"""

import numpy as np

from jtmaps import B1, classify_jte, explain
from jtmaps.errors import ContractViolation
from jtmaps.sampling import random_unitary, rng

hidden = B1(random_unitary(rng(42)), 0.3)
result = classify_jte(lambda a: hidden(a), vectorized=True)
print(explain(result))
print("recovered c:", result.form.c)

print()
print(explain(classify_jte(lambda a: np.swapaxes(a, -1, -2), vectorized=True)))

print()
try:
    classify_jte(lambda a: a @ a, vectorized=True)
except ContractViolation as exc:
    print(explain(exc))
