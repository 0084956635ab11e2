"""The identity suite behind ``weylwig check``.

Each suite is a function ``(grid, rng) -> list[CheckEntry]``.  Random inputs
come from a generator seeded by ``(seed, suite index)``, so results do not
depend on which suites run or in what order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import oracle
from .grid import GridSpec, make_grid
from .kernels import check_K_marginals, check_xi_sqrt, kernel_K
from .operators import (
    dagger,
    expectation,
    matmul,
    OperatorKernel,
    op_identity,
    op_parity,
    op_projector,
    trace,
)
from .report import CheckEntry, CheckReport
from .states import random_band_limited, random_mixed_state, state_fock, state_zoo
from .wigner import (
    anticom_check,
    compose_left,
    left_rep,
    marginal_p,
    marginal_q,
    momentum_diagonal,
    phase_point_marginal_ops,
    phase_point_op,
    phase_point_op_via_parity,
    _phase_point_kernel,
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

__all__ = ["SUITES", "run_suites"]


def _rel(a, b) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    scale = np.abs(b).max()
    return float(np.abs(a - b).max() / scale) if scale > 0 else float(np.abs(a - b).max())


def _entry(name, measured, tol, **meta) -> CheckEntry:
    return CheckEntry(name, float(measured), tol, meta)


def suite_reps(g: GridSpec, rng) -> list[CheckEntry]:
    hb = g.hbar
    I_l = left_rep(op_identity(g))
    A = random_band_limited(g, rng)
    H = random_band_limited(g, rng, hermitian=True)
    B = random_band_limited(g, rng)
    rho0 = state_fock(g, 0)
    qprof, pprof = rep_marginals(left_rep(rho0))
    rprof = rep_marginals(right_rep(rho0))
    Al, Bl = left_rep(A), left_rep(B)
    return [
        _entry("reps.identity_left", np.abs(I_l.values * 2 * np.pi * hb - 1).max(), 1e-12),
        _entry("reps.identity_right",
               np.abs(right_rep(op_identity(g)).values * 2 * np.pi * hb - 1).max(), 1e-12),
        _entry("reps.hermitian_conjugate", _rel(right_rep(H).values, left_rep(H).values.conj()), 1e-12),
        _entry("reps.dagger_relation", _rel(right_rep(dagger(A)).values, Al.values.conj()), 1e-12),
        _entry("reps.marginal_q", np.abs(qprof - position_diagonal(rho0)).max(), 1e-8),
        _entry("reps.marginal_p", np.abs(pprof - momentum_diagonal(rho0, g.p)).max(), 1e-8),
        _entry("reps.right_marginal_p", np.abs(rprof[1] - momentum_diagonal(rho0, g.p)).max(), 1e-8),
        _entry("reps.trace", abs(Al.integral() - trace(A)) / abs(trace(A)), 1e-10),
        _entry("reps.compose_left", _rel(compose_left(Al, Bl).values, left_rep(matmul(A, B)).values), 1e-3),
        _entry("reps.compose_left_order",
               _rel(compose_left(Bl, Al).values, left_rep(matmul(B, A)).values), 1e-3),
        _entry("reps.product_trace_via_K",
               abs(product_trace_via_K(Al, Bl) - oracle.trace_oracle(A, B)) / abs(oracle.trace_oracle(A, B)),
               1e-3),
        _entry("reps.product_trace_swap",
               abs(product_trace_via_K(Al, Bl) - product_trace_via_K(Bl, Al))
               / abs(oracle.trace_oracle(A, B)), 1e-12),
    ]


def suite_kernels(g: GridSpec, rng) -> list[CheckEntry]:
    def gauss(x):
        return np.exp(-0.5 * np.asarray(x) ** 2)

    out = [check_K_marginals(g, a, gauss) for a in ((0.0, 0.0), (0.5, -0.25), (-1.0, 0.75))]
    a, b = rng.uniform(-2, 2, size=(2, 2))
    out.append(_entry("kernels.K_symmetry", abs(kernel_K(g, a, b) - kernel_K(g, b, a)), 1e-15))
    out.append(_entry("kernels.K_reference_value",
                      abs(kernel_K(g, (1.0, 0.0), (0.0, 1.0)) - np.exp(-1j / g.hbar)), 1e-15))
    return out


def suite_xi_sqrt(g: GridSpec, rng) -> list[CheckEntry]:
    pairs = [((0.0, 0.0), (0.0, 0.0)), ((0.5, 0.0), (0.0, 0.5))]
    pairs += [tuple(map(tuple, rng.uniform(-1, 1, size=(2, 2)))) for _ in range(3)]
    return [check_xi_sqrt(g, a, b) for a, b in pairs]


def suite_symbol(g: GridSpec, rng) -> list[CheckEntry]:
    hb = g.hbar
    A = random_band_limited(g, rng)
    H = random_band_limited(g, rng, hermitian=True)
    C = random_band_limited(g, rng, hermitian=True)
    SA, SH, SC = weyl_symbol(A), weyl_symbol(H), weyl_symbol(C)
    rho0, rho1 = state_fock(g, 0), state_fock(g, 1)
    S0 = weyl_symbol(rho0)
    ref0 = oracle.quad_weyl_symbol(oracle.analytic_kernel("fock", (0, 1.0), hb), 0.0, 0.0, hbar=hb)
    ref1 = oracle.quad_weyl_symbol(oracle.analytic_kernel("fock", (1, 1.0), hb), 0.0, 0.0, hbar=hb)
    M, k = rng.integers(0, 2 * g.N - 1), rng.integers(0, g.N)
    direct = weyl_symbol_at(A, g.qh[M], g.pw[k])
    xi = xi_transform(left_rep(rho0), [(0.0, 0.0)])[0]
    tr = oracle.trace_oracle(H, C)
    return [
        _entry("symbol.roundtrip", _rel(weyl_quantize(SA).K, A.K), 1e-6),
        _entry("symbol.reality", np.abs(SH.values.imag).max() / np.abs(SH.values).max(), 1e-10),
        _entry("symbol.trace_pairing", abs(trace_pairing(SH, SC) - tr) / abs(tr), 1e-6),
        _entry("symbol.trace_pairing_swap", abs(trace_pairing(SH, SC) - trace_pairing(SC, SH)), 1e-12),
        _entry("symbol.ground_state_origin", abs(weyl_symbol_at(rho0, 0.0, 0.0) - ref0), 1e-8),
        _entry("symbol.fock1_origin", abs(weyl_symbol_at(rho1, 0.0, 0.0) - ref1), 1e-6),
        _entry("symbol.fft_vs_direct", abs(direct - SA.values[M, k]) / np.abs(SA.values).max(), 1e-12),
        _entry("symbol.xi_route", abs(xi - weyl_symbol_at(rho0, 0.0, 0.0)) / 2.0, 5e-2),
        _entry("symbol.identity_smeared",
               abs(trace_pairing(weyl_symbol(op_identity(g)), S0) - 1.0), 1e-10),
    ]


def suite_phase_point(g: GridSpec, rng) -> list[CheckEntry]:
    hb = g.hbar
    q0 = g.q[rng.integers(g.N // 4, 3 * g.N // 4)]
    p0 = float(rng.uniform(-1, 1))
    W = phase_point_op(g, q0, p0)
    Wm = W.matrix * np.pi * hb
    ev = np.linalg.eigvalsh(0.5 * (Wm + Wm.conj().T))
    invol = matmul(W, W).K * (np.pi * hb) ** 2 - op_identity(g).K
    # the parity-product path needs q0 on an integer multiple of dq
    qs = g.dq * np.round(q0 / g.dq)
    direct = OperatorKernel(g, _phase_point_kernel(g, g.half_index_of(qs), p0, True))
    Wdir = phase_point_op(g, q0, p0, wrap=False)
    rho0 = state_fock(g, 0)
    smeared = 2 * np.pi * hb * expectation(rho0, Wdir)
    ref = weyl_symbol_at(rho0, q0, p0)
    out = [
        _entry("phase_point.hermitian", np.abs(W.K - W.K.conj().T).max() * np.pi * hb * g.dq, 1e-12),
        _entry("phase_point.involution", np.abs(invol).max() * g.dq, 1e-12),
        _entry("phase_point.eigenvalues", np.abs(np.abs(ev) - 1).max(), 1e-10),
        _entry("phase_point.origin_parity",
               np.abs(phase_point_op(g, 0.0, 0.0).K * np.pi * hb - op_parity(g).K).max() * g.dq, 1e-15),
        _entry("phase_point.product_vs_direct",
               _rel(phase_point_op_via_parity(g, qs, p0).K, direct.K), 1e-12),
        _entry("phase_point.smeared_trace", abs(smeared - ref), 1e-6),
    ]
    out += anticom_check(g, 0.0, 0.0)
    out += anticom_check(g, q0, p0)
    gs = make_grid(32, g.L, hb)
    out.append(symplectic_fourier_check(gs, 0.0, 0.0))
    return out


def suite_marginals(g: GridSpec, rng) -> list[CheckEntry]:
    errs_q, errs_p, norms = [], [], []
    for rho in state_zoo(g).values():
        F = wigner_distribution(rho)
        errs_q.append(np.abs(marginal_q(F) - position_diagonal(rho).real).max())
        errs_p.append(np.abs(marginal_p(F) - momentum_diagonal(rho).real).max())
        norms.append(abs(F.integral() - 1))
    j0 = g.N // 2
    Pq = phase_point_marginal_ops(g, q0=g.q[j0])
    Pq_ref = op_projector(g, g.q[j0]).K / g.dq
    Pp = phase_point_marginal_ops(g, p0=0.0)
    return [
        _entry("marginals.q_zoo", max(errs_q), 1e-8),
        _entry("marginals.p_zoo", max(errs_p), 1e-8),
        _entry("marginals.normalization_zoo", max(norms), 1e-8),
        _entry("marginals.phase_point_q", np.abs(Pq.K - Pq_ref).max() * g.dq ** 2, 1e-3),
        _entry("marginals.phase_point_p", np.abs(Pp.K * 2 * np.pi * g.hbar - 1).max(), 1e-3),
    ]


def suite_bounds(g: GridSpec, rng) -> list[CheckEntry]:
    hb = g.hbar
    bound = 1 / (np.pi * hb)
    zoo = max(np.abs(wigner_distribution(r).values).max() for r in state_zoo(g).values())
    spread = max(0.0, min(2.0, g.L - 6.0))
    rnd = max(np.abs(wigner_distribution(random_mixed_state(g, rng, spread=spread)).values).max()
              for _ in range(10))
    F1 = wigner_distribution(state_fock(g, 1))
    M0 = g.half_index_of(0.0)
    return [
        _entry("bounds.zoo", max(0.0, zoo - bound), 1e-9, max_abs=float(zoo)),
        _entry("bounds.random_mixed", max(0.0, rnd - bound), 1e-9, max_abs=float(rnd)),
        _entry("bounds.fock1_minimum", abs(F1.values[M0, g.pw_index0].real + bound), 1e-6),
    ]


SUITES = {
    "reps": suite_reps,
    "kernels": suite_kernels,
    "xi-sqrt": suite_xi_sqrt,
    "symbol": suite_symbol,
    "phase-point": suite_phase_point,
    "marginals": suite_marginals,
    "bounds": suite_bounds,
}


def run_suites(g: GridSpec, names=None, *, seed: int = 0, tol: float | None = None,
               threads: int = 1) -> CheckReport:
    """Run the named suites (all by default); entries sorted by name."""
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)}")
    order = list(SUITES)

    def run(name):
        rng = np.random.default_rng([seed, order.index(name)])
        return SUITES[name](g, rng)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, names))
    else:
        results = [run(n) for n in names]
    report = CheckReport([e for r in results for e in r])
    if tol is not None:
        report = CheckReport([e.with_tolerance(tol) for e in report.entries])
    return report.sorted()
