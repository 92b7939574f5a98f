"""SU(2) acting on Pauli coordinates, and lifting a rotation back.

u and -u give the same rotation; the lift picks a sign by a fixed rule.
Near half-turns the lift switches to a different quaternion branch and stays
accurate.
"""

import numpy as np

from jtmaps import so3_to_su2, su2_to_so3
from jtmaps.mat2 import SIGMA0
from jtmaps.sampling import random_su2, rng

u = random_su2(rng(1))
r = su2_to_so3(u)
print("R orthogonal:", np.allclose(r.T @ r, np.eye(3)), " det R =", round(np.linalg.det(r), 12))
print("R(u) == R(-u):", np.allclose(r, su2_to_so3(-u)))
v = so3_to_su2(r)
print("lift is +-u:", np.allclose(v, u) or np.allclose(v, -u))

half_turn = np.diag([1.0, -1.0, -1.0])
w = so3_to_su2(half_turn)
print("half-turn lift squares to -I:", np.allclose(w @ w, -SIGMA0))
