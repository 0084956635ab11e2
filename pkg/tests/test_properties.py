import numpy as np
from hypothesis import given, settings, strategies as st

from weylwig import (
    PhaseSpaceFunction,
    dagger,
    kernel_K,
    kernel_xi,
    make_grid,
    matmul,
    phase_point_op,
    random_band_limited,
    random_mixed_state,
    trace,
    trace_pairing,
    weyl_quantize,
    weyl_symbol,
    wigner_distribution,
)
from weylwig.grid import from_momentum, to_momentum
from weylwig.oracle import trace_oracle

G = make_grid(64, 8.0)
G32 = make_grid(32, 8.0)
seeds = st.integers(0, 2 ** 32 - 1)
coord = st.floats(-6, 6, allow_nan=False)
settings.register_profile("weylwig", deadline=None, max_examples=25)
settings.load_profile("weylwig")


@given(seeds, st.integers(4, 80), st.floats(0.5, 10), st.floats(0.2, 3))
def test_parseval(seed, N, L, hbar):
    g = make_grid(N, L, hbar)
    v = np.random.default_rng(seed).normal(size=(N, 2)) @ np.array([1, 1j])
    vt = to_momentum(g, v)
    a, b = g.dq * np.sum(np.abs(v) ** 2), g.dp * np.sum(np.abs(vt) ** 2)
    assert abs(a - b) <= 1e-12 * a
    assert np.abs(from_momentum(g, vt) - v).max() <= 1e-12 * np.abs(v).max()


@given(st.integers(4, 300))
def test_reflection_is_exact(N):
    g = make_grid(N, 1.0 + N / 7)
    j = np.arange(N)
    r = g.reflect_index(j)
    assert np.array_equal(r[r], j)
    assert np.array_equal(g.q[r], -g.q)


@given(coord, coord, coord, coord)
def test_kernels_pure_phase_and_symmetric(q, p, q2, p2):
    K = kernel_K(G, (q, p), (q2, p2))
    assert abs(abs(K) - 1) <= 1e-15
    assert K == kernel_K(G, (q2, p2), (q, p))
    xi = kernel_xi(G, (q, p), (q2, p2))
    assert abs(abs(xi) - np.sqrt(2 / np.pi)) <= 1e-15
    assert xi == kernel_xi(G, (q2, p2), (q, p))


@settings(max_examples=100)
@given(seeds)
def test_reality_of_hermitian_symbols(seed):
    H = random_band_limited(G, np.random.default_rng(seed), hermitian=True)
    S = weyl_symbol(H).values
    assert np.abs(S.imag).max() <= 1e-10 * np.abs(S).max()
    assert np.array_equal(dagger(H).K, H.K)


@given(seeds, st.complex_numbers(max_magnitude=10), st.complex_numbers(max_magnitude=10))
def test_linearity(seed, a, b):
    rng = np.random.default_rng(seed)
    A, B = random_band_limited(G32, rng), random_band_limited(G32, rng)
    lhs = weyl_symbol(A * a + B * b).values
    rhs = a * weyl_symbol(A).values + b * weyl_symbol(B).values
    scale = (abs(a) + abs(b) + 1) * max(np.abs(weyl_symbol(A).values).max(), np.abs(weyl_symbol(B).values).max())
    assert np.abs(lhs - rhs).max() <= 1e-12 * scale
    F = PhaseSpaceFunction(G32, rng.normal(size=(63, 32)))
    H = PhaseSpaceFunction(G32, rng.normal(size=(63, 32)))
    lq = weyl_quantize(F * a + H * b).K
    rq = a * weyl_quantize(F).K + b * weyl_quantize(H).K
    assert np.abs(lq - rq).max() <= 1e-12 * (abs(a) + abs(b) + 1) * max(
        np.abs(weyl_quantize(F).K).max(), np.abs(weyl_quantize(H).K).max())


@given(seeds)
def test_round_trip(seed):
    A = random_band_limited(G, np.random.default_rng(seed))
    S = weyl_symbol(A)
    back = weyl_quantize(S)
    assert np.abs(back.K - A.K).max() <= 1e-6 * np.abs(A.K).max()
    assert np.abs(weyl_symbol(back).values - S.values).max() <= 1e-6 * np.abs(S.values).max()


@given(seeds)
def test_trace_pairing_is_matrix_trace(seed):
    rng = np.random.default_rng(seed)
    A, B = random_band_limited(G, rng), random_band_limited(G, rng)
    SA, SB = weyl_symbol(A), weyl_symbol(B)
    t = trace_pairing(SA, SB)
    ref = trace_oracle(A, B)
    assert abs(t - ref) <= 1e-6 * abs(ref)
    assert abs(t - trace_pairing(SB, SA)) <= 1e-12 * abs(ref)
    t1, t2 = trace(matmul(A, B)), trace(matmul(B, A))
    assert abs(t1 - t2) <= 1e-12 * abs(t1)


@given(st.integers(0, 2 * G.N - 2), st.floats(-3, 3))
def test_phase_point_spectrum(M, p0):
    W = phase_point_op(G, G.qh[M], p0)
    ev = np.linalg.eigvalsh(W.matrix * np.pi * G.hbar)
    assert np.abs(np.abs(ev) - 1).max() <= 1e-10


@given(seeds)
def test_wigner_bound_random_mixed(seed):
    rho = random_mixed_state(G, np.random.default_rng(seed))
    W = wigner_distribution(rho).values
    assert np.abs(W).max() <= 1 / np.pi + 1e-9
    assert np.abs(W.imag).max() <= 1e-10
