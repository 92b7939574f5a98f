"""Effects, the sequential product, and sequential endomorphisms.

A o B = sqrt(A) B sqrt(A).  Every continuous map preserving it is one of a
short list of forms; D3 sends singular effects to 0.  Unital forms extend to
Jordan triple maps of the whole positive cone.
"""

import numpy as np

from jtmaps import D3, D4, check_jte, classify_seq, commute_iff_seq_commute, extend_to_cone, seq_product
from jtmaps.sampling import random_effect, random_rank_one_projection, random_unitary, rng

gen = rng(3)
a, b = random_effect(gen, 2)
print("A o B =\n", np.round(seq_product(a, b), 4))
print("(commute, sequentially commute):", commute_iff_seq_commute(a, b))

v = random_unitary(gen)
d3 = D3(v, 1.5)
print("D3 on a rank-one projection:\n", d3(random_rank_one_projection(gen)))
res = classify_seq(d3, vectorized=True)
print("classified:", type(res.form).__name__, "d =", round(res.form.d, 9))

d4 = D4(v, 0.8, 0.1)
Phi = extend_to_cone(d4, (1.6, 0.2), basis=v, vectorized=True)
print("extension of D4 is a Jordan triple map, residual", f"{check_jte(Phi, 500, vectorized=True):.1e}")
