import numpy as np
import pytest

from weylwig import (
    PhaseSpaceFunction,
    anticom_check,
    compose_left,
    dagger,
    expectation,
    left_rep,
    make_grid,
    marginal_p,
    marginal_q,
    matmul,
    momentum_diagonal,
    op_displacement,
    op_identity,
    op_parity,
    op_projector,
    phase_point_marginal_ops,
    phase_point_op,
    position_diagonal,
    product_trace_via_K,
    random_band_limited,
    rep_marginals,
    right_rep,
    state_cat,
    state_coherent,
    state_fock,
    state_thermal,
    symplectic_fourier_check,
    trace,
    trace_pairing,
    weyl_quantize,
    weyl_symbol,
    weyl_symbol_at,
    wigner_distribution,
    xi_transform,
)
from weylwig.oracle import closed_form_wigner, trace_oracle
from weylwig.wigner import phase_point_op_via_parity, symplectic_fourier_sum


def rel(a, b):
    return np.abs(np.asarray(a) - np.asarray(b)).max() / np.abs(np.asarray(b)).max()


# left and right representatives

def test_identity_representatives(g64):
    I = op_identity(g64)
    np.testing.assert_allclose(left_rep(I).values, 1 / (2 * np.pi), atol=1e-12, rtol=0)
    np.testing.assert_allclose(right_rep(I).values, 1 / (2 * np.pi), atol=1e-12, rtol=0)


def test_ground_state_left_rep_closed_form():
    g = make_grid(129, 8.0)  # odd N puts (0, 0) on the conjugate lattice
    F = left_rep(state_fock(g, 0))
    j0 = k0 = 64
    assert F.values[j0, k0] == pytest.approx((2 * np.pi) ** -0.5 * np.pi ** -0.5, abs=1e-8)
    Q, P = np.meshgrid(g.q, g.p, indexing="ij")
    ref = np.exp(-(Q ** 2 + P ** 2) / 2 - 1j * Q * P) / np.sqrt(2 * np.pi ** 2)
    np.testing.assert_allclose(F.values, ref, atol=1e-8, rtol=0)


def test_hermitian_and_dagger_relations(g64, rng):
    H = random_band_limited(g64, rng, hermitian=True)
    np.testing.assert_allclose(right_rep(H).values, left_rep(H).values.conj(), atol=1e-12 * np.abs(H.K).max())
    A = random_band_limited(g64, rng)
    np.testing.assert_allclose(right_rep(dagger(A)).values, left_rep(A).values.conj(),
                               atol=1e-12 * np.abs(A.K).max())


def test_right_rep_q_integral(g64):
    rho0 = state_fock(g64, 0)
    _, pprof = rep_marginals(right_rep(rho0))
    np.testing.assert_allclose(pprof, np.exp(-g64.p ** 2) / np.sqrt(np.pi), atol=1e-8)


def test_rep_marginals(g64):
    rho0 = state_fock(g64, 0)
    qprof, pprof = rep_marginals(left_rep(rho0))
    np.testing.assert_allclose(qprof, np.exp(-g64.q ** 2) / np.sqrt(np.pi), atol=1e-8)
    np.testing.assert_allclose(pprof, momentum_diagonal(rho0, g64.p), atol=1e-8)
    m = 20
    Pm = op_projector(g64, g64.q[m])
    qp, _ = rep_marginals(left_rep(Pm))
    np.testing.assert_allclose(qp * g64.dq, np.eye(64)[m], atol=1e-12)


def test_rep_total_is_trace(g64, rng):
    A = random_band_limited(g64, rng)
    assert abs(left_rep(A).integral() - trace(A)) <= 1e-10 * abs(trace(A))


def test_rep_marginals_wrong_lattice(g32):
    with pytest.raises(ValueError):
        rep_marginals(weyl_symbol(op_identity(g32)))


@pytest.mark.slow
def test_compose_left(g48, rng):
    rho0 = state_fock(g48, 0)
    A = random_band_limited(g48, rng)
    B = random_band_limited(g48, rng)
    Al, Bl = left_rep(A), left_rep(B)
    Il = left_rep(op_identity(g48))
    assert rel(compose_left(Al, Il).values, Al.values) <= 1e-3
    r0 = left_rep(rho0)
    assert rel(compose_left(r0, r0).values, left_rep(matmul(rho0, rho0)).values) <= 1e-3
    BA = compose_left(Bl, Al).values
    assert rel(BA, left_rep(matmul(B, A)).values) <= 1e-3
    # and it is genuinely not the other order
    assert rel(BA, left_rep(matmul(A, B)).values) > 1e-2


def test_compose_left_lattice_mismatch(g32):
    with pytest.raises(ValueError):
        compose_left(left_rep(op_identity(g32)), weyl_symbol(op_identity(g32)))


@pytest.mark.slow
def test_product_trace_via_K(g48, rng):
    r0, r1 = left_rep(state_fock(g48, 0)), left_rep(state_fock(g48, 1))
    assert product_trace_via_K(r0, r0) == pytest.approx(1.0, abs=1e-3)
    assert abs(product_trace_via_K(r0, r1)) <= 1e-3
    H = random_band_limited(g48, rng, hermitian=True)
    C = random_band_limited(g48, rng, hermitian=True)
    t = product_trace_via_K(left_rep(H), left_rep(C))
    ref = trace_oracle(H, C)
    assert abs(t - ref) <= 1e-3 * abs(ref)
    assert abs(t - product_trace_via_K(left_rep(C), left_rep(H))) <= 1e-12 * abs(ref)


# Weyl symbols

def test_symbol_examples(g128):
    rho0, rho1 = state_fock(g128, 0), state_fock(g128, 1)
    assert weyl_symbol_at(rho0, 0.0, 0.0) == pytest.approx(2.0, abs=1e-8)
    assert weyl_symbol_at(rho1, 0.0, 0.0) == pytest.approx(-2.0, abs=1e-6)
    S = weyl_symbol(rho0)
    assert S.values[g128.N - 1, g128.pw_index0] == pytest.approx(2.0, abs=1e-8)


def test_symbol_matches_closed_form(g128):
    S = weyl_symbol(state_fock(g128, 3))
    Q, P = np.meshgrid(g128.qh, g128.pw, indexing="ij")
    ref = 2 * np.pi * closed_form_wigner("fock", (3, 1.0), Q, P)
    np.testing.assert_allclose(S.values, ref, atol=1e-10)


def test_identity_symbol_on_the_half_step_lattice(g64):
    S = weyl_symbol(op_identity(g64)).values
    # Kronecker-delta diagonal: 2 on lattice rows, 0 on midpoint rows, mean 1
    np.testing.assert_allclose(S[::2], 2.0, atol=1e-10)
    np.testing.assert_allclose(S[1::2], 0.0, atol=1e-10)
    # smeared against any state it is the symbol 1
    for rho in (state_fock(g64, 0), state_coherent(g64, 1.0, -0.5), state_thermal(g64, 0.5)):
        assert trace_pairing(weyl_symbol(op_identity(g64)), weyl_symbol(rho)) == pytest.approx(1, abs=1e-10)
        ones = PhaseSpaceFunction(g64, np.ones((127, 64)))
        assert trace_pairing(ones, weyl_symbol(rho)) == pytest.approx(1, abs=1e-8)


def test_symbol_at_matches_fft(g64, rng):
    A = random_band_limited(g64, rng)
    S = weyl_symbol(A)
    for M, k in rng.integers(0, 64, size=(20, 2)) * np.array([2, 1]) - np.array([0, 0]):
        M = min(M, 126)
        assert abs(weyl_symbol_at(A, g64.qh[M], g64.pw[k]) - S.values[M, k]) <= 1e-12 * np.abs(S.values).max()


def test_symbol_at_off_lattice(g32):
    with pytest.raises(ValueError):
        weyl_symbol_at(op_identity(g32), 0.1, 0.0)


def test_xi_transform_routes(g64):
    r0 = left_rep(state_fock(g64, 0))
    v = xi_transform(r0, [(0.0, 0.0), (0.5, -0.5)])
    assert abs(v[0] - 2.0) <= 5e-2 * 2.0
    ref = weyl_symbol_at(state_fock(g64, 0), g64.qh[67], -0.5)
    assert abs(xi_transform(r0, [(g64.qh[67], -0.5)])[0] - ref) <= 5e-2 * abs(ref)
    I = left_rep(op_identity(g64))
    for pt in [(0.0, 0.0), (1.0, 0.5), (-2.0, 1.0)]:
        assert abs(xi_transform(I, [pt])[0] - 1.0) <= 5e-2
    alpha = 0.3 - 1.7j
    np.testing.assert_allclose(xi_transform(r0 * alpha, [(0.2, 0.1)]), alpha * xi_transform(r0, [(0.2, 0.1)]),
                               rtol=1e-12)
    with pytest.raises(ValueError):
        xi_transform(r0, [(0, 0)], damping=(0.1, 0.2))


# phase-point operators

@pytest.mark.parametrize("N", [31, 32, 64])
def test_phase_point_at_origin_is_parity(N):
    g = make_grid(N, 8.0)
    W = phase_point_op(g, 0.0, 0.0)
    np.testing.assert_array_equal(W.K * np.pi, op_parity(g).K)


def test_phase_point_algebra(g64, rng):
    for _ in range(5):
        q0 = g64.q[rng.integers(8, 56)]
        p0 = rng.uniform(-2, 2)
        W = phase_point_op(g64, q0, p0)
        np.testing.assert_array_equal(W.K, W.K.conj().T)
        WW = matmul(W, W).K * np.pi ** 2
        np.testing.assert_allclose(WW * g64.dq, np.eye(64), atol=1e-12)
        ev = np.linalg.eigvalsh(W.matrix * np.pi)
        np.testing.assert_allclose(np.abs(ev), 1.0, atol=1e-10)


def test_phase_point_product_vs_direct(g64):
    for s in (-5, 0, 3):
        q0 = s * g64.dq
        A = phase_point_op_via_parity(g64, q0, 0.37)
        B = phase_point_op(g64, q0, 0.37)
        np.testing.assert_allclose(A.K, B.K, atol=1e-12 * np.abs(B.K).max(), rtol=0)
    d = phase_point_op(g64, g64.q[20], 0.37, wrap=False).K
    a = np.arange(64)
    b = 40 - a
    ok = (b >= 0) & (b < 64)
    np.testing.assert_allclose(d[a[ok], b[ok]],
                               np.exp(0.37j * (g64.q[a[ok]] - g64.q[b[ok]])) / (np.pi * g64.dq), rtol=1e-15)
    assert np.count_nonzero(d) == ok.sum()


def test_phase_point_smeared_trace(g64):
    rho0 = state_fock(g64, 0)
    for q0, p0 in [(g64.q[30], 0.4), (g64.qh[60], -1.1), (0.0, 0.0)]:
        W = phase_point_op(g64, q0, p0, wrap=False)
        assert 2 * np.pi * expectation(rho0, W) == pytest.approx(weyl_symbol_at(rho0, q0, p0), abs=1e-6)


def test_phase_point_raw_trace(g64):
    # lattice rows carry the whole diagonal
    assert trace(phase_point_op(g64, g64.q[10], 0.5, wrap=False)) == pytest.approx(1 / np.pi, abs=1e-14)
    assert trace(phase_point_op(g64, g64.qh[21], 0.5, wrap=False)) == 0


def test_phase_point_off_lattice(g32):
    with pytest.raises(ValueError):
        phase_point_op(g32, 0.1, 0.0)


# quantization and trace pairing

def test_round_trip_both_orders(g64, rng):
    for _ in range(3):
        A = random_band_limited(g64, rng)
        S = weyl_symbol(A)
        assert rel(weyl_quantize(S).K, A.K) <= 1e-6
        assert rel(weyl_symbol(weyl_quantize(S)).values, S.values) <= 1e-6
    rho0 = state_fock(g64, 0)
    assert rel(weyl_quantize(weyl_symbol(rho0)).K, rho0.K) <= 1e-6


def test_quantize_constant_one(g64):
    ones = PhaseSpaceFunction(g64, np.ones((127, 64)))
    Q = weyl_quantize(ones)
    # acts as the identity on every state...
    for rho in (state_fock(g64, 0), state_fock(g64, 2), state_cat(g64, 1.5)):
        assert expectation(rho, Q) == pytest.approx(1.0, abs=1e-8)
    # ...while the lattice-exact symbol of the identity quantizes to it entrywise
    np.testing.assert_allclose(weyl_quantize(weyl_symbol(op_identity(g64))).K, op_identity(g64).K,
                               atol=1e-6 / g64.dq)


def test_quantize_real_is_hermitian(g64, rng):
    F = PhaseSpaceFunction(g64, rng.normal(size=(127, 64)))
    K = weyl_quantize(F).K
    assert np.abs(K - K.conj().T).max() <= 1e-10 * np.abs(K).max()


def test_quantize_wrong_lattice(g32):
    with pytest.raises(ValueError):
        weyl_quantize(left_rep(op_identity(g32)))


def test_trace_pairing(g64, rng):
    S0, S1 = weyl_symbol(state_fock(g64, 0)), weyl_symbol(state_fock(g64, 1))
    assert trace_pairing(S0, S0) == pytest.approx(1.0, abs=1e-6)
    assert abs(trace_pairing(S0, S1)) <= 1e-6
    H = random_band_limited(g64, rng, hermitian=True)
    C = random_band_limited(g64, rng, hermitian=True)
    ref = trace_oracle(H, C)
    assert abs(trace_pairing(weyl_symbol(H), weyl_symbol(C)) - ref) <= 1e-6 * abs(ref)
    with pytest.raises(ValueError):
        trace_pairing(S0, left_rep(state_fock(g64, 0)))


# Wigner distributions

def test_wigner_values(g128):
    M0, k0 = g128.N - 1, g128.pw_index0
    W0 = wigner_distribution(state_fock(g128, 0))
    assert W0.values[M0, k0].real == pytest.approx(1 / np.pi, abs=1e-8)
    W1 = wigner_distribution(state_fock(g128, 1))
    assert W1.values[M0, k0].real == pytest.approx(-1 / np.pi, abs=1e-6)
    assert np.abs(W0.values.imag).max() <= 1e-10
    assert W0.integral() == pytest.approx(1.0, abs=1e-8)


def test_coherent_peak(g128):
    rho = state_coherent(g128, 2.0, 1.0)
    assert weyl_symbol_at(rho, 2.0, 1.0).real / (2 * np.pi) == pytest.approx(1 / np.pi, abs=1e-6)
    W = wigner_distribution(rho)
    M, k = np.unravel_index(np.argmax(W.values.real), W.values.shape)
    assert g128.qh[M] == pytest.approx(2.0, abs=0.5 * g128.dq)
    assert g128.pw[k] == pytest.approx(1.0, abs=0.5 * g128.dpw)


def test_marginals_zoo(g128):
    for rho in (state_fock(g128, 1), state_cat(g128, 2.0), state_thermal(g128, 0.5)):
        F = wigner_distribution(rho)
        np.testing.assert_allclose(marginal_q(F), position_diagonal(rho).real, atol=1e-8)
        np.testing.assert_allclose(marginal_p(F), momentum_diagonal(rho).real, atol=1e-8)


def test_marginals_closed_forms(g128):
    F1 = wigner_distribution(state_fock(g128, 1))
    q = g128.q
    np.testing.assert_allclose(marginal_q(F1), 2 / np.sqrt(np.pi) * q ** 2 * np.exp(-q ** 2), atol=1e-6)
    F0 = wigner_distribution(state_fock(g128, 0))
    np.testing.assert_allclose(marginal_q(F0), np.exp(-q ** 2) / np.sqrt(np.pi), atol=1e-8)
    np.testing.assert_allclose(marginal_p(F0), np.exp(-g128.pw ** 2) / np.sqrt(np.pi), atol=1e-8)


def test_cat_fringe_spacing(g128):
    q0 = 2.0
    F = wigner_distribution(state_cat(g128, q0))
    mp, p = marginal_p(F), g128.pw
    assert marginal_q(F)[np.argmin(np.abs(g128.q))] < 0.1 * marginal_q(F).max()  # two lobes
    inner = np.nonzero((mp[1:-1] < mp[:-2]) & (mp[1:-1] < mp[2:]) & (np.abs(p[1:-1]) < 4))[0] + 1
    # parabolic refinement of each minimum
    y0, y1, y2 = mp[inner - 1], mp[inner], mp[inner + 1]
    zeros = p[inner] + 0.5 * g128.dpw * (y0 - y2) / (y0 - 2 * y1 + y2)
    assert len(zeros) >= 4
    spacing = np.diff(zeros).mean()
    assert spacing == pytest.approx(np.pi / q0, rel=0.05)


def test_translation_covariance(g128):
    rho = state_fock(g128, 1)
    s, m = 8, 5
    a, b = s * g128.dq, m * g128.dpw
    U = op_displacement(g128, a, b)
    W = wigner_distribution(rho).values
    Ws = wigner_distribution(matmul(matmul(U, rho), dagger(U))).values
    # U moves the state by +(a, b)
    np.testing.assert_allclose(Ws[2 * s:, m:], W[:-2 * s, :-m], atol=1e-8)


# marginal operators

def test_phase_point_marginal_ops(g64):
    j0 = 33
    P = phase_point_marginal_ops(g64, q0=g64.q[j0]).K
    # delta-normalized |q0><q0|: 1/dq for each delta
    assert P[j0, j0] * g64.dq ** 2 == pytest.approx(1.0, rel=1e-3)
    off = P.copy()
    off[j0, j0] = 0
    assert np.abs(off).max() <= 1e-3 / g64.dq
    np.testing.assert_allclose(P, op_projector(g64, g64.q[j0]).K / g64.dq, atol=1e-12)
    Pp = phase_point_marginal_ops(g64, p0=0.0).K
    np.testing.assert_allclose(np.abs(Pp), 1 / (2 * np.pi), atol=1e-3)
    with pytest.raises(ValueError):
        phase_point_marginal_ops(g64)
    with pytest.raises(ValueError):
        phase_point_marginal_ops(g64, q0=0.01)


def test_full_phase_point_sum(g64):
    ones = PhaseSpaceFunction(g64, np.ones((127, 64)))
    T = weyl_quantize(ones)
    # raw lattice trace of the full sum is N/2 ...
    assert trace(T) == pytest.approx(g64.N / 2, abs=1e-10)
    # ... its smeared trace is 1
    assert expectation(state_fock(g64, 0), T) == pytest.approx(1.0, abs=1e-8)


# anticommutators and the symplectic Fourier reconstruction

def test_anticommutation(g64, rng):
    for e in anticom_check(g64, 0.0, 0.0):
        assert e.passed, e.line()
    for _ in range(5):
        q0, p0 = g64.q[rng.integers(20, 44)], rng.uniform(-1, 1)
        eq, ep = anticom_check(g64, q0, p0)
        assert eq.measured <= 1e-12 and ep.measured <= 1e-8


def test_momentum_anticommutation_converges():
    d = [anticom_check(make_grid(N, 8.0), 0.5, 0.3)[1].measured for N in (16, 32, 64)]
    assert d[1] < d[0]
    assert d[2] <= max(d[1], 1e-11)


def test_symplectic_fourier(g32):
    e = symplectic_fourier_check(g32, 0.0, 0.0)
    assert e.passed and e.measured <= 1e-2
    devs = [symplectic_fourier_check(g32, 0.0, 0.0, c).measured for c in (0.5, 0.75, 0.9, 1.0)]
    assert all(x > y for x, y in zip(devs, devs[1:]))
    assert symplectic_fourier_check(g32, g32.q[20], -0.8).measured <= 1e-2


def test_symplectic_single_term(g32):
    # only the (x, k) = (0, 0) node: the weighted identity
    hb = g32.hbar
    R = symplectic_fourier_sum(make_grid(4, 1.0), 0.0, 0.0, cutoff=1.0, n_k=1)
    g4 = make_grid(4, 1.0)
    dk = 2 * 2 * np.pi * hb / g4.dq
    diag = np.diag(R.K)
    np.testing.assert_allclose(diag, g4.dq * dk / (2 * np.pi * hb) ** 2 / g4.dq, rtol=1e-14)


# PhaseSpaceFunction I/O

def test_csv_round_trip(g32):
    F = wigner_distribution(state_fock(g32, 1))
    text = F.to_csv()
    assert text.splitlines()[0] == "q,p,re,im"
    assert len(text.splitlines()) == 1 + 63 * 32
    G = PhaseSpaceFunction.from_csv(text, g32)
    np.testing.assert_array_equal(G.values, F.values)
    env = F.envelope(kind="wigner")
    assert env["grid"] == {"N": 32, "L": 8.0, "hbar": 1.0} and env["lattice"] == "wigner"


@pytest.mark.parametrize("mutate", [
    lambda t: t.replace("q,p,re,im", "q,p,value", 1),
    lambda t: "\n".join(t.splitlines()[:-1]),
    lambda t: t.replace(t.splitlines()[5], "a,b,c,d"),
])
def test_csv_rejects_bad_input(g32, mutate):
    text = wigner_distribution(state_fock(g32, 0)).to_csv()
    with pytest.raises(ValueError):
        PhaseSpaceFunction.from_csv(mutate(text), g32)


def test_csv_rejects_other_grid(g32):
    text = wigner_distribution(state_fock(g32, 0)).to_csv()
    with pytest.raises(ValueError):
        PhaseSpaceFunction.from_csv(text, make_grid(32, 7.0))


def test_shape_and_lattice_checks(g32):
    with pytest.raises(ValueError):
        PhaseSpaceFunction(g32, np.ones((32, 32)), "wigner")
    with pytest.raises(ValueError):
        PhaseSpaceFunction(g32, np.ones((32, 32)), "husimi")
    F = PhaseSpaceFunction(g32, np.ones((32, 32)), "conjugate")
    assert F.weight == g32.dq * g32.dp
    assert F.lattice_rows().shape == (32, 32)
    assert wigner_distribution(state_fock(g32, 0)).lattice_rows().shape == (32, 32)
