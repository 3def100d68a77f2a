# coding: utf-8

# # Two qubits: C_R next to the Wootters concurrence
#
# For a pure pair the partial-conjugation concurrence reduces to the familiar
# 2|a_uu a_dd - a_ud a_du|, and it agrees with the Wootters value.

import numpy as np

from qconcur import bell, concurrence_2q_closed_form, concurrence_R, eof, random_pure, wootters_concurrence

# A Bell state is maximally entangled on the only available pair.

phi = bell()
print("C_R(Bell) =", concurrence_R(phi, "12"))

# Random pure pairs: the three numbers line up to round-off.

rng = np.random.default_rng(7)
for _ in range(5):
    psi = random_pure(2, rng)
    c_w = wootters_concurrence(psi.density_matrix()).c_w
    print(f"{concurrence_R(psi, '12'):.12f}  {concurrence_2q_closed_form(psi):.12f}  {c_w:.12f}")

# Werner states p|Bell><Bell| + (1-p) I/4 are separable up to p = 1/3.

for p in (0.0, 0.3, 1 / 3, 0.5, 0.8, 1.0):
    rho = p * phi.density_matrix().entries + (1 - p) * np.eye(4) / 4
    r = wootters_concurrence(rho)
    print(f"p={p:.3f}  C_W={r.c_w:.6f}  raw={r.c_w_unclamped:+.6f}  EOF={r.eof:.6f}")

# The entanglement of formation is a monotone function of the concurrence.

print("EOF(0.5) =", eof(0.5))
