"""
Wigner functions, marginals and the bound
=========================================

The Wigner function is the symbol of the state over ``2 pi hbar``.  Its
projections are the position and momentum densities, and it never exceeds
``1/(pi hbar)`` in modulus.
"""

import numpy as np

from weylwig import (make_grid, marginal_p, marginal_q, momentum_diagonal, position_diagonal,
                     state_zoo, wigner_distribution)

g = make_grid(128, 8.0)
center = g.half_index_of(0.0), g.pw_index0

for name, rho in state_zoo(g).items():
    F = wigner_distribution(rho)
    eq = np.abs(marginal_q(F) - position_diagonal(rho).real).max()
    ep = np.abs(marginal_p(F) - momentum_diagonal(rho).real).max()
    print(f"{name:16s} W(0,0)={F.values[center].real:+.6f}  max|W|pi={np.abs(F.values).max() * np.pi:.6f}"
          f"  marginal errors {eq:.1e} {ep:.1e}")
