"""Phase-space calculus on a discretized line.

Operator kernels, left/right representatives, the Weyl map and its inverse,
phase-point operators and Wigner distributions, each with brute-force
references in :mod:`weylwig.oracle`.
"""

from .errors import SupportError, ValidationError
from .grid import GridSpec, from_momentum, make_grid, plane_waves, to_momentum
from .kernels import PhasePoint, check_K_marginals, check_xi_sqrt, kernel_K, kernel_xi
from .operators import (
    DensityState,
    OperatorKernel,
    apply,
    commutator,
    dagger,
    expectation,
    matmul,
    op_displacement,
    op_identity,
    op_momentum,
    op_ordered_delta,
    op_parity,
    op_position,
    op_projector,
    op_weyl,
    trace,
)
from .report import CheckEntry, CheckReport
from .states import (
    random_band_limited,
    random_mixed_state,
    state_cat,
    state_coherent,
    state_fock,
    state_mixture,
    state_pure,
    state_thermal,
    state_zoo,
)
from .wigner import (
    PhaseSpaceFunction,
    anticom_check,
    compose_left,
    left_rep,
    marginal_p,
    marginal_q,
    momentum_diagonal,
    phase_point_marginal_ops,
    phase_point_op,
    position_diagonal,
    product_trace_via_K,
    rep_marginals,
    right_rep,
    symplectic_fourier_check,
    trace_pairing,
    weyl_quantize,
    weyl_symbol,
    weyl_symbol_at,
    wigner_distribution,
    xi_transform,
)

__version__ = "0.1.0"
