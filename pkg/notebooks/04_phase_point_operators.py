"""
Phase-point operators
=====================

``W(q, p)`` is the displaced parity over ``pi hbar``.  Its trace against an
operator gives the symbol, and its square is a multiple of the identity.
"""

import numpy as np

from weylwig import (anticom_check, expectation, make_grid, matmul, op_parity, phase_point_op,
                     state_fock, symplectic_fourier_check, weyl_symbol_at)

g = make_grid(64, 8.0)
W00 = phase_point_op(g, 0.0, 0.0)
print("W(0,0) pi hbar == parity:", np.array_equal(W00.K * np.pi, op_parity(g).K))

q0, p0 = g.q[40], 0.7
W = phase_point_op(g, q0, p0)
ev = np.linalg.eigvalsh(W.matrix * np.pi)
print("eigenvalues of pi W:", np.unique(np.round(ev, 12)))
print("involution error:", np.abs(matmul(W, W).K * np.pi ** 2 * g.dq - np.eye(g.N)).max())

rho0 = state_fock(g, 0)
Wd = phase_point_op(g, q0, p0, wrap=False)
print("2 pi Tr(rho W) =", (2 * np.pi * expectation(rho0, Wd)).real, " symbol:", weyl_symbol_at(rho0, q0, p0).real)

for e in anticom_check(g, q0, p0):
    print(e.line())

g32 = make_grid(32, 8.0)
# the truncated Fourier sum of W rebuilds the parity; it is exact once the
# momentum window covers one full Brillouin zone
for cutoff in (0.5, 0.75, 1.0):
    e = symplectic_fourier_check(g32, 0.0, 0.0, cutoff)
    print(f"cutoff {cutoff:4.2f}  error {e.measured:.2e}")
