"""
Weyl symbols and their inverse
==============================

Symbols are sampled on the wigner lattice: half-step rows in ``q`` and
momentum spacing ``dp/2``.  On that lattice the map is exactly invertible.
"""

import numpy as np

from weylwig import (left_rep, make_grid, op_identity, random_band_limited, state_fock,
                     trace_pairing, weyl_quantize, weyl_symbol, weyl_symbol_at, xi_transform)
from weylwig.oracle import trace_oracle

g = make_grid(64, 8.0)
rho0, rho1 = state_fock(g, 0), state_fock(g, 1)
print("symbol of rho0 at origin:", weyl_symbol_at(rho0, 0.0, 0.0).real)
print("symbol of Fock 1 at origin:", weyl_symbol_at(rho1, 0.0, 0.0).real)

rng = np.random.default_rng(0)
A, B = random_band_limited(g, rng), random_band_limited(g, rng)
SA, SB = weyl_symbol(A), weyl_symbol(B)
print("round trip:", np.abs(weyl_quantize(SA).K - A.K).max() / np.abs(A.K).max())
print("trace pairing vs matrix trace:", abs(trace_pairing(SA, SB) - trace_oracle(A, B)))

# the identity is singular: 2 on lattice rows, 0 on midpoint rows, 1 on average
SI = weyl_symbol(op_identity(g)).values
print("identity symbol rows:", SI[0, 0].real, SI[1, 0].real, " pairing with rho0:",
      trace_pairing(weyl_symbol(op_identity(g)), weyl_symbol(rho0)).real)

# the xi route to the symbol, from the left representative
print("xi route at origin:", xi_transform(left_rep(rho0), [(0.0, 0.0)])[0].real)
