"""The three families of Jordan triple endomorphisms of 2x2 positive matrices.

Builds one map of each family, checks phi(ABA) = phi(A) phi(B) phi(A) on a
random pair, and shows how the determinant transforms.
"""

import numpy as np

from jtmaps import B1, B2, B3, jordan_triple
from jtmaps.canonical import det_exponent, relative_residual
from jtmaps.mat2 import det2
from jtmaps.sampling import random_pd, random_unitary, rng

gen = rng(0)
u = random_unitary(gen)
a, b = random_pd(gen, 2)

for form in (B1(u, 0.3), B2(u, -0.7), B3(u, 1.2, -0.4)):
    lhs = form(jordan_triple(a, b))
    rhs = jordan_triple(form(a), form(b))
    k = det_exponent(form)
    print(f"{type(form).__name__}: triple-product residual {relative_residual(lhs, rhs):.1e}; "
          f"Det phi(A) = Det(A)^{k:.2f}: {np.isclose(det2(form(a)).real, det2(a).real ** k)}")

# transposition is not a separate family: it is B2 with d = 1
j = np.array([[0, 1], [-1, 0]])
print("A^T == B2(J, 1)(A):", np.allclose(a.T, B2(j, 1.0)(a)))
