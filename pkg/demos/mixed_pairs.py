# coding: utf-8

# # Mixed pairs through a canonical purification
#
# A two-qubit density matrix is lifted to a pure parent with an ancilla
# register; C_R is read off on the system pair.

import numpy as np

from qconcur import canonical_purification, concurrence_R_mixed, partial_trace, real_rho_shortcut

rng = np.random.default_rng(11)
g = rng.standard_normal((4, 4))
rho = g @ g.T
rho /= np.trace(rho)

parent = canonical_purification(rho)
print("parent qubits:", parent.num_qubits)
print("trace error:", np.abs(partial_trace(parent, [1, 2]).entries - rho).max())

# For a real rho the result collapses to two matrix elements.

print("C_R mixed   :", concurrence_R_mixed(rho))
print("2|r14 - r23|:", real_rho_shortcut(rho))
