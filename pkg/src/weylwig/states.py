"""Test states and band-limited random operators.

All states are oscillator-like wavepackets of width ``sigma`` sampled on the
grid.  They must fit the window: wavepackets obey ``|q0| + 6 sigma <= L`` and
number states must leak less than ``1e-10`` of their norm past ``|q| = L``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import SupportError
from .grid import GridSpec
from .operators import DensityState, OperatorKernel

__all__ = [
    "wavepacket",
    "hermite_functions",
    "state_pure",
    "state_coherent",
    "state_fock",
    "state_cat",
    "state_thermal",
    "state_mixture",
    "random_mixed_state",
    "random_band_limited",
    "thermal_weights",
    "state_zoo",
    "MAX_FOCK",
]

MAX_FOCK = 30
_LEAK_TOL = 1e-10


def _check_packet(g: GridSpec, q0: float, sigma: float) -> None:
    if sigma <= 0:
        raise SupportError(f"sigma must be positive, got {sigma}")
    if abs(q0) + 6 * sigma > g.L:
        raise SupportError(
            f"support violation: |q0| + 6*sigma = {abs(q0) + 6 * sigma:.6g} exceeds L = {g.L:.6g}"
        )


def wavepacket(g: GridSpec, q0: float, p0: float, sigma: float) -> np.ndarray:
    """Normalized Gaussian ``(pi sigma^2)^(-1/4) exp(-(q-q0)^2/2sigma^2 + i p0 q/hbar)``."""
    _check_packet(g, q0, sigma)
    q = g.q
    return (np.pi * sigma ** 2) ** -0.25 * np.exp(
        -((q - q0) ** 2) / (2 * sigma ** 2) + 1j * p0 * q / g.hbar
    )


def hermite_functions(x: np.ndarray, nmax: int, sigma: float = 1.0) -> np.ndarray:
    """Oscillator eigenfunctions ``psi_0 .. psi_nmax`` at ``x``, shape (nmax+1, len(x)).

    Uses the normalized three-term recurrence, whose terms stay ``O(1)`` for
    every ``n``; no large normalization constants are ever formed.
    """
    x = np.asarray(x, dtype=float)
    u = x / sigma
    out = np.empty((nmax + 1,) + u.shape)
    out[0] = (np.pi * sigma ** 2) ** -0.25 * np.exp(-0.5 * u ** 2)
    if nmax >= 1:
        out[1] = np.sqrt(2.0) * u * out[0]
    for n in range(1, nmax):
        out[n + 1] = np.sqrt(2.0 / (n + 1)) * u * out[n] - np.sqrt(n / (n + 1)) * out[n - 1]
    return out


def _fock_leak(L: float, n: int, sigma: float) -> float:
    # norm outside [-L, L]; the tail is sampled on its own fine grid
    x = np.linspace(L, L + 12 * sigma + 2 * math.sqrt(2 * n + 1) * sigma, 4001)
    f = hermite_functions(x, n, sigma)[n] ** 2
    return 2.0 * float(np.trapezoid(f, x))


def _check_fock(g: GridSpec, n: int, sigma: float) -> None:
    _check_packet(g, 0.0, sigma)
    leak = _fock_leak(g.L, n, sigma)
    if leak > _LEAK_TOL:
        raise SupportError(
            f"support violation: Fock level {n} leaks {leak:.2e} of its norm beyond |q| = L = {g.L:.6g}"
        )


def state_pure(g: GridSpec, psi) -> DensityState:
    """Projector onto ``psi`` after normalization on the grid."""
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.sqrt(g.dq * np.vdot(psi, psi).real)
    return DensityState.from_kernel(OperatorKernel(g, np.outer(psi, psi.conj())))


def state_coherent(g: GridSpec, q0: float = 0.0, p0: float = 0.0, sigma: float = 1.0) -> DensityState:
    return state_pure(g, wavepacket(g, q0, p0, sigma))


def state_fock(g: GridSpec, n: int, sigma: float = 1.0) -> DensityState:
    if not 0 <= n <= MAX_FOCK:
        raise SupportError(f"Fock level must be in [0, {MAX_FOCK}], got {n}")
    _check_fock(g, n, sigma)
    return state_pure(g, hermite_functions(g.q, n, sigma)[n])


def state_cat(g: GridSpec, q0: float, p0: float = 0.0, sigma: float = 1.0,
              phase: float = 0.0) -> DensityState:
    """Normalized ``|q0, p0> + exp(i phase) |-q0, -p0>``."""
    psi = wavepacket(g, q0, p0, sigma) + np.exp(1j * phase) * wavepacket(g, -q0, -p0, sigma)
    return state_pure(g, psi)


def thermal_weights(nbar: float, cutoff: float = 1e-12) -> np.ndarray:
    """Boltzmann weights ``nbar^n / (1+nbar)^(n+1)`` until the sum reaches ``1 - cutoff``."""
    if nbar < 0:
        raise SupportError(f"nbar must be >= 0, got {nbar}")
    if nbar == 0:
        return np.array([1.0])
    r = nbar / (1.0 + nbar)
    nmax = int(math.ceil(math.log(cutoff) / math.log(r)))
    w = (1.0 - r) * r ** np.arange(nmax + 1)
    return w


def state_thermal(g: GridSpec, nbar: float, sigma: float = 1.0) -> DensityState:
    """Thermal state; levels whose truncation could matter are support-checked."""
    w = thermal_weights(nbar)
    _check_packet(g, 0.0, sigma)
    leak = sum(w[n] * _fock_leak(g.L, n, sigma) for n in range(len(w)))
    if leak > _LEAK_TOL:
        raise SupportError(
            f"support violation: thermal mixture leaks {leak:.2e} of its norm beyond |q| = L = {g.L:.6g}"
        )
    psi = hermite_functions(g.q, len(w) - 1, sigma)
    K = np.einsum("n,na,nb->ab", w, psi, psi)
    K = K / (g.dq * np.trace(K))
    return DensityState.from_kernel(OperatorKernel(g, K))


def state_mixture(states, weights) -> DensityState:
    weights = np.asarray(weights, dtype=float)
    if np.any(weights < 0):
        raise ValueError("mixture weights must be non-negative")
    weights = weights / weights.sum()
    g = states[0].grid
    K = sum(w * s.K for w, s in zip(weights, states))
    return DensityState.from_kernel(OperatorKernel(g, K))


def random_mixed_state(g: GridSpec, rng: np.random.Generator, n: int = 3,
                       spread: float = 2.0, sigma: float = 1.0) -> DensityState:
    """Random mixture of ``n`` random pure superpositions of wavepackets."""
    states = []
    for _ in range(n):
        c = rng.normal(size=2) + 1j * rng.normal(size=2)
        psi = sum(
            ci * wavepacket(g, *rng.uniform(-spread, spread, size=2), sigma) for ci in c
        )
        states.append(state_pure(g, psi))
    return state_mixture(states, rng.uniform(0.1, 1.0, size=n))


def random_band_limited(g: GridSpec, rng: np.random.Generator, n: int = 3,
                        spread: float = 2.0, sigma: float = 1.0,
                        hermitian: bool = False) -> OperatorKernel:
    """``sum_ij c_ij |packet_i><packet_j|`` with random centers and coefficients."""
    pk = np.array([wavepacket(g, *rng.uniform(-spread, spread, size=2), sigma) for _ in range(n)])
    c = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    if hermitian:
        c = 0.5 * (c + c.conj().T)
    K = np.einsum("ij,ia,jb->ab", c, pk, pk.conj())
    if hermitian:
        K = 0.5 * (K + K.conj().T)  # exact, not just up to einsum round-off
    return OperatorKernel(g, K)


def state_zoo(g: GridSpec) -> dict:
    """Named reference states: coherent, Fock 0-4, cat and thermal."""
    zoo = {
        "coherent(0,0)": state_coherent(g, 0.0, 0.0),
        "coherent(1.5,1)": state_coherent(g, 1.5, 1.0),
    }
    for n in range(5):
        zoo[f"fock({n})"] = state_fock(g, n)
    zoo["cat(1.5)"] = state_cat(g, 1.5)
    zoo["thermal(0.5)"] = state_thermal(g, 0.5)
    return zoo
