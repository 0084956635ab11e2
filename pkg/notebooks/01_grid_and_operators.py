"""
The lattice and the operator zoo
================================

Operators are stored as sampled position kernels on a half-offset lattice.
"""

import numpy as np

from weylwig import (apply, commutator, expectation, make_grid, matmul, op_parity,
                     op_momentum, op_position, state_fock, to_momentum, trace)

g = make_grid(128, 8.0)
print(g, "dq =", g.dq, "dp =", g.dp)

# the ground state is its own Fourier transform
psi = np.pi ** -0.25 * np.exp(-g.q ** 2 / 2)
print("self-Fourier error:", np.abs(to_momentum(g, psi) - np.pi ** -0.25 * np.exp(-g.p ** 2 / 2)).max())

# position moments of the ground state
rho0 = state_fock(g, 0)
X = op_position(g)
print("<q> =", expectation(rho0, X).real, " <q^2> =", expectation(rho0, matmul(X, X)).real)

# [q, p] = i hbar, tested on a smooth vector away from the edges
out = apply(commutator(X, op_momentum(g)), psi)
print("[q,p] psi / psi at q~0:", out[64] / psi[64])

# parity squares to one; its lattice trace is 0 for even N
P = op_parity(g)
print("P^2 == 1:", np.array_equal(matmul(P, P).K * g.dq, np.eye(g.N)), " Tr P =", trace(P).real)
