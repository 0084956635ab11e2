"""
Left and right representatives, and the product-trace kernel
============================================================

``A_l = <q|A|p><p|q>`` lives on the conjugate lattice.  Products and traces
of operators follow from ``A_l`` through the pure-phase kernel ``K``.
"""

import numpy as np

from weylwig import (check_K_marginals, check_xi_sqrt, compose_left, left_rep, make_grid,
                     matmul, product_trace_via_K, rep_marginals, state_fock, trace)

g = make_grid(48, 8.0)
rho0, rho1 = state_fock(g, 0), state_fock(g, 1)
r0, r1 = left_rep(rho0), left_rep(rho1)

qprof, pprof = rep_marginals(r0)
print("q-profile at the center:", qprof[24].real, "expected", np.exp(-g.q[24] ** 2) / np.sqrt(np.pi))

# composition of left representatives reproduces the operator product
err = np.abs(compose_left(r0, r1).values - left_rep(matmul(rho0, rho1)).values).max()
print("compose_left error:", err)

# and the trace formula
print("Tr(rho0 rho0) =", product_trace_via_K(r0, r0).real, " Tr(rho0 rho1) =", abs(product_trace_via_K(r0, r1)))

# K reproduces test functions in the smeared sense
print(check_K_marginals(g, (0.0, 0.0), lambda x: np.exp(-np.asarray(x) ** 2 / 2)).line())

# xi convolved with itself gives K, up to a damped quadrature
e = check_xi_sqrt(g, (0.5, 0.0), (0.0, 0.5))
print(e.line())
print("raw errors by damping:", ["%.2e" % x for x in e.meta["raw_errors"]])
