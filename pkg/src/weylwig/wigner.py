"""Weyl symbols, phase-point operators and Wigner distributions.

Two phase-space lattices are used.

``conjugate``
    ``(q_j, p_k)``, the position lattice times the conjugate momentum
    lattice, weight ``dq * dp``.  Left and right representatives live here.

``wigner``
    ``(q_M, pw_k)`` with ``q_M`` on half steps of ``dq`` (``2N - 1`` rows;
    even ``M`` are lattice points, odd ``M`` midpoints) and ``pw_k`` spaced
    ``dp / 2``; weight ``(dq / 2) * dpw``.  The chord ``q'`` joining
    ``q_M - q'/2`` and ``q_M + q'/2`` then always lands on lattice points,
    the even and odd anti-diagonals of the kernel are both kept, and the Weyl
    map is exactly invertible.

Singular operators are awkward on this lattice.  The identity kernel is a
Kronecker delta along the diagonal, so its symbol is 2 on lattice rows and
0 on midpoint rows; the average over the two row types is still 1.  The raw
lattice trace of a phase-point operator is ``1/(pi hbar)`` on lattice rows
and 0 on midpoint rows, again averaging to ``1/(2 pi hbar)``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .grid import GridSpec, plane_waves
from .kernels import extrapolate_to_zero, kernel_K, kernel_xi, _check_damping
from .operators import (
    OperatorKernel,
    _same_grid,
    apply,
    dagger,
    matmul,
    op_displacement,
    op_momentum,
    op_parity,
    op_weyl,
)
from .report import CheckEntry

__all__ = [
    "PhaseSpaceFunction",
    "left_rep",
    "right_rep",
    "rep_marginals",
    "compose_left",
    "product_trace_via_K",
    "weyl_symbol",
    "weyl_symbol_at",
    "xi_transform",
    "phase_point_op",
    "phase_point_op_via_parity",
    "weyl_quantize",
    "trace_pairing",
    "wigner_distribution",
    "marginal_q",
    "marginal_p",
    "position_diagonal",
    "momentum_diagonal",
    "phase_point_marginal_ops",
    "anticom_check",
    "symplectic_fourier_check",
]

WIGNER = "wigner"
CONJUGATE = "conjugate"


@dataclass(frozen=True, eq=False)
class PhaseSpaceFunction:
    """Complex samples on one of the two phase-space lattices."""

    grid: GridSpec
    values: np.ndarray
    lattice: str = WIGNER

    def __post_init__(self):
        if self.lattice not in (WIGNER, CONJUGATE):
            raise ValueError(f"unknown lattice {self.lattice!r}")
        v = np.array(self.values, dtype=complex)
        if v.shape != self.shape_for(self.grid, self.lattice):
            raise ValueError(
                f"{self.lattice} lattice needs shape {self.shape_for(self.grid, self.lattice)}, got {v.shape}"
            )
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @staticmethod
    def shape_for(g: GridSpec, lattice: str) -> tuple[int, int]:
        return (2 * g.N - 1, g.N) if lattice == WIGNER else (g.N, g.N)

    @classmethod
    def from_callable(cls, g: GridSpec, f, lattice: str = WIGNER) -> "PhaseSpaceFunction":
        """Sample ``f(q, p)`` (broadcasting) on the chosen lattice."""
        q, p = cls.axes_for(g, lattice)
        Q, P = np.meshgrid(q, p, indexing="ij")
        return cls(g, np.broadcast_to(f(Q, P), Q.shape), lattice)

    @staticmethod
    def axes_for(g: GridSpec, lattice: str):
        return (g.qh, g.pw) if lattice == WIGNER else (g.q, g.p)

    @property
    def q(self) -> np.ndarray:
        return self.axes_for(self.grid, self.lattice)[0]

    @property
    def p(self) -> np.ndarray:
        return self.axes_for(self.grid, self.lattice)[1]

    @property
    def weight(self) -> float:
        g = self.grid
        return 0.5 * g.dq * g.dpw if self.lattice == WIGNER else g.dq * g.dp

    @property
    def real(self) -> np.ndarray:
        return self.values.real

    def integral(self) -> complex:
        return complex(self.weight * self.values.sum())

    def lattice_rows(self) -> np.ndarray:
        """Rows at the position lattice points (even half-step rows), shape (N, N)."""
        if self.lattice != WIGNER:
            return self.values
        return self.values[::2]

    def require(self, lattice: str) -> None:
        if self.lattice != lattice:
            raise ValueError(f"expected a function on the {lattice} lattice, got {self.lattice}")

    def __mul__(self, c):
        return PhaseSpaceFunction(self.grid, self.values * c, self.lattice)

    __rmul__ = __mul__

    def __add__(self, other):
        _compatible(self, other)
        return PhaseSpaceFunction(self.grid, self.values + other.values, self.lattice)

    def __sub__(self, other):
        _compatible(self, other)
        return PhaseSpaceFunction(self.grid, self.values - other.values, self.lattice)

    # interchange formats

    def envelope(self, **extra) -> dict:
        d = {"grid": self.grid.to_dict(), "lattice": self.lattice, "shape": list(self.values.shape)}
        d.update(extra)
        return d

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("q,p,re,im\n")
        q, p = self.q, self.p
        v = self.values
        for j in range(v.shape[0]):
            for k in range(v.shape[1]):
                z = v[j, k]
                buf.write(f"{q[j]:.17g},{p[k]:.17g},{z.real:.17g},{z.imag:.17g}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, g: GridSpec, lattice: str = WIGNER) -> "PhaseSpaceFunction":
        """Parse CSV written by :meth:`to_csv`; rows must match the grid's lattice."""
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or [h.strip() for h in rows[0]] != ["q", "p", "re", "im"]:
            raise ValueError("CSV header must be 'q,p,re,im'")
        body = rows[1:]
        shape = cls.shape_for(g, lattice)
        if len(body) != shape[0] * shape[1]:
            raise ValueError(f"CSV has {len(body)} data rows, grid expects {shape[0] * shape[1]}")
        try:
            data = np.array(body, dtype=float)
        except ValueError:
            raise ValueError("CSV contains non-numeric fields") from None
        if data.ndim != 2 or data.shape[1] != 4:
            raise ValueError("every CSV row needs four fields")
        q, p = cls.axes_for(g, lattice)
        Q, P = np.meshgrid(q, p, indexing="ij")
        scale = max(g.L, abs(p).max())
        if (np.abs(data[:, 0] - Q.ravel()).max() > 1e-9 * scale
                or np.abs(data[:, 1] - P.ravel()).max() > 1e-9 * scale):
            raise ValueError("CSV sample points do not match the declared grid")
        return cls(g, (data[:, 2] + 1j * data[:, 3]).reshape(shape), lattice)


def _compatible(F: PhaseSpaceFunction, G: PhaseSpaceFunction) -> None:
    if F.grid != G.grid:
        raise ValueError(f"grid mismatch: {F.grid} vs {G.grid}")
    if F.lattice != G.lattice:
        raise ValueError(f"lattice mismatch: {F.lattice} vs {G.lattice}")


# left and right representatives

def left_rep(A: OperatorKernel) -> PhaseSpaceFunction:
    """``A_l(q, p) = <q|A|p><p|q>`` on the conjugate lattice."""
    g = A.grid
    W = plane_waves(g)
    qAp = g.dq * (A.K @ W)
    return PhaseSpaceFunction(g, qAp * W.conj(), CONJUGATE)


def right_rep(A: OperatorKernel) -> PhaseSpaceFunction:
    """``A_r(q, p) = <p|A|q><q|p>`` on the conjugate lattice."""
    g = A.grid
    W = plane_waves(g)
    pAq = g.dq * (W.conj().T @ A.K)  # [k, j] = <p_k|A|q_j>
    return PhaseSpaceFunction(g, pAq.T * W, CONJUGATE)


def rep_marginals(F: PhaseSpaceFunction):
    """``(sum_k dp F, sum_j dq F)``: samples of ``<q|A|q>`` and ``<p|A|p>``."""
    F.require(CONJUGATE)
    g = F.grid
    return g.dp * F.values.sum(axis=1), g.dq * F.values.sum(axis=0)


def compose_left(F: PhaseSpaceFunction, G: PhaseSpaceFunction) -> PhaseSpaceFunction:
    """Left representative of ``A B`` from ``A_l`` and ``B_l`` by direct quadrature.

    ``(AB)_l(q, p) = sum dq' dp' A_l(q, p') K((q, p'), (q', p)) B_l(q', p)``;
    ``O(N^4)`` work in total.
    """
    F.require(CONJUGATE)
    G.require(CONJUGATE)
    _compatible(F, G)
    g = F.grid
    q, p = g.q, g.p
    out = np.empty((g.N, g.N), dtype=complex)
    # indices: l -> p', b -> q', k -> p
    for j in range(g.N):
        Kj = kernel_K(g, (q[j], p[:, None, None]), (q[None, :, None], p[None, None, :]))
        out[j] = np.einsum("l,lbk,bk->k", F.values[j], Kj, G.values)
    return PhaseSpaceFunction(g, g.dq * g.dp * out, CONJUGATE)


def product_trace_via_K(F: PhaseSpaceFunction, G: PhaseSpaceFunction) -> complex:
    """``Tr(AB) = sum A_l(q, p) K((q, p), (q', p')) B_l(q', p')`` over both copies of the lattice."""
    F.require(CONJUGATE)
    G.require(CONJUGATE)
    _compatible(F, G)
    g = F.grid
    q, p = g.q, g.p
    total = 0.0j
    for j in range(g.N):
        Kj = kernel_K(g, (q[j], p[:, None, None]), (q[None, :, None], p[None, None, :]))
        total += np.einsum("k,kbl,bl->", F.values[j], Kj, G.values)
    return complex((g.dq * g.dp) ** 2 * total)


# Weyl symbols

def _chord_indices(n: int):
    a, b = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    M = a + b
    r = M % 2
    m = (b - a - r) // 2  # chord d = b - a = 2m + r
    return a.ravel(), b.ravel(), M.ravel(), r.ravel(), m.ravel()


def weyl_symbol(A: OperatorKernel) -> PhaseSpaceFunction:
    """Weyl symbol on the wigner lattice by the chord sum.

    ``A(q_M, p) = 2 dq sum_{a+b=M} K[a, b] exp(i p (q_b - q_a) / hbar)``; chords
    leaving the window contribute nothing.  One length-``N`` FFT per row.
    """
    g = A.grid
    n, k0 = g.N, g.pw_index0
    a, b, M, r, m = _chord_indices(n)
    c = np.zeros((2 * n - 1, n), dtype=complex)
    c[M, m % n] = A.K[a, b] * np.exp(-2j * np.pi * k0 * m / n)
    S = n * np.fft.ifft(c, axis=1)
    kk = np.arange(n) - k0
    rows = np.arange(2 * n - 1) % 2
    S *= np.exp(1j * np.pi * np.outer(rows, kk) / n)
    return PhaseSpaceFunction(g, 2.0 * g.dq * S, WIGNER)


def weyl_symbol_at(A: OperatorKernel, q: float, p: float) -> complex:
    """Direct ``O(N)`` chord sum at one point; ``q`` on the half-step lattice, ``p`` free."""
    g = A.grid
    M = g.half_index_of(q)
    a = np.arange(max(0, M - g.N + 1), min(M, g.N - 1) + 1)
    b = M - a
    return complex(2.0 * g.dq * np.sum(A.K[a, b] * np.exp(1j * p * (g.q[b] - g.q[a]) / g.hbar)))


def xi_transform(F: PhaseSpaceFunction, points, damping=(0.4, 0.3, 0.2)) -> np.ndarray:
    """Weyl symbol from a left representative through the square-root kernel.

    ``A(q, p) = sqrt(2 pi hbar) sum dq' dp' xi((q, p), (q', p')) A_l(q', p')``
    evaluated with the regulator ``exp(-eps ((q-q')^2 + (p-p')^2))`` for each
    ``eps`` in ``damping`` and extrapolated to ``eps = 0``.
    """
    F.require(CONJUGATE)
    d = _check_damping(damping)
    g = F.grid
    Q, P = np.meshgrid(g.q, g.p, indexing="ij")
    pref = np.sqrt(2 * np.pi * g.hbar) * g.dq * g.dp
    out = []
    for q, p in np.atleast_2d(np.asarray(points, dtype=float)):
        base = kernel_xi(g, (q, p), (Q, P)) * F.values
        r2 = (q - Q) ** 2 + (p - P) ** 2
        vals = [pref * np.sum(base * np.exp(-e * r2)) for e in d]
        out.append(extrapolate_to_zero(d, vals))
    return np.array(out, dtype=complex)


# phase-point operators

def _phase_point_kernel(g: GridSpec, M: int, p0: float, wrap: bool) -> np.ndarray:
    a = np.arange(g.N)
    b = M - a
    if wrap:
        b = b % g.N
        keep = np.ones(g.N, dtype=bool)
    else:
        keep = (b >= 0) & (b < g.N)
    a, b = a[keep], b[keep]
    K = np.zeros((g.N, g.N), dtype=complex)
    K[a, b] = np.exp(1j * p0 * (g.q[a] - g.q[b]) / g.hbar) / (np.pi * g.hbar * g.dq)
    return K


def phase_point_op_via_parity(g: GridSpec, q0: float, p0: float) -> OperatorKernel:
    """``U(q0, p0) P U(q0, p0)^dagger / (pi hbar)`` for an integer multiple ``q0`` of ``dq``."""
    U = op_displacement(g, q0, p0)
    return matmul(matmul(U, op_parity(g)), dagger(U)) * (1.0 / (np.pi * g.hbar))


def phase_point_op(g: GridSpec, q0: float, p0: float, *, wrap: bool = True) -> OperatorKernel:
    """Phase-point operator ``W(q0, p0)`` (displaced parity over ``pi hbar``).

    Kernel ``(1/(pi hbar dq)) [q_a + q_b = 2 q0] exp(i p0 (q_a - q_b)/hbar)``;
    ``q0`` may sit on a lattice point or a midpoint.  With ``wrap=True`` the
    reflection is completed cyclically at the window edge, which makes
    ``(pi hbar W)^2 = 1`` exact; for ``q0`` an integer multiple of ``dq`` the
    operator is built as the displaced parity product.  ``wrap=False`` gives
    the plain anti-diagonal through ``q0``, the form used by the Weyl map.
    """
    M = g.half_index_of(q0, what="q0")
    if wrap and (M - (g.N - 1)) % 2 == 0:
        return phase_point_op_via_parity(g, q0, p0)
    return OperatorKernel(g, _phase_point_kernel(g, M, p0, wrap))


def weyl_quantize(F: PhaseSpaceFunction) -> OperatorKernel:
    """Inverse Weyl map: ``sum (dq/2) dpw F(q_M, pw_k) W(q_M, pw_k)`` with zero-padded ``W``.

    Exact inverse of :func:`weyl_symbol`; evaluated with one FFT per row.
    """
    F.require(WIGNER)
    g = F.grid
    n, k0 = g.N, g.pw_index0
    kk = np.arange(n) - k0
    rows = np.arange(2 * n - 1) % 2
    G = F.values * np.exp(-1j * np.pi * np.outer(rows, kk) / n)
    S = np.fft.fft(G, axis=1)  # S[M, m] = sum_k G exp(-2 pi i k m / n)
    a, b, M, r, m = _chord_indices(n)
    K = np.empty((n, n), dtype=complex)
    K[a, b] = S[M, m % n] * np.exp(2j * np.pi * k0 * m / n)
    return OperatorKernel(g, g.dpw / (2 * np.pi * g.hbar) * K)


def trace_pairing(F: PhaseSpaceFunction, G: PhaseSpaceFunction) -> complex:
    """``Tr(AB) = (1/(2 pi hbar)) sum (dq/2) dpw A B`` over the wigner lattice."""
    F.require(WIGNER)
    _compatible(F, G)
    return complex(F.weight * np.sum(F.values * G.values) / (2 * np.pi * F.grid.hbar))


# Wigner distributions and marginals

def wigner_distribution(rho: OperatorKernel) -> PhaseSpaceFunction:
    """``rho(q, p) = Tr(rho W(q, p))``, i.e. the Weyl symbol over ``2 pi hbar``."""
    return weyl_symbol(rho) * (1.0 / (2 * np.pi * rho.grid.hbar))


def marginal_q(F: PhaseSpaceFunction) -> np.ndarray:
    """``sum_k dpw F(q_j, pw_k)`` on the position lattice points."""
    F.require(WIGNER)
    return (F.grid.dpw * F.lattice_rows().sum(axis=1)).real


def marginal_p(F: PhaseSpaceFunction) -> np.ndarray:
    """``sum_M (dq/2) F(q_M, pw_k)`` on the wigner momentum lattice."""
    F.require(WIGNER)
    return (0.5 * F.grid.dq * F.values.sum(axis=0)).real


def position_diagonal(A: OperatorKernel) -> np.ndarray:
    """``<q_j|A|q_j>``."""
    return np.diag(A.K).copy()


def momentum_diagonal(A: OperatorKernel, p=None) -> np.ndarray:
    """``<p|A|p>`` at arbitrary momenta (default: the wigner momentum lattice)."""
    g = A.grid
    p = g.pw if p is None else np.asarray(p, dtype=float)
    W = plane_waves(g, p)
    return g.dq ** 2 * np.einsum("ak,ab,bk->k", W.conj(), A.K, W)


def phase_point_marginal_ops(g: GridSpec, *, q0: float | None = None,
                             p0: float | None = None) -> OperatorKernel:
    """Direct sums of phase-point operators along one phase-space axis.

    ``q0`` given: ``sum_k dpw W(q0, pw_k)``, which should be ``|q0><q0|``.
    ``p0`` given: ``sum_M (dq/2) W(q_M, p0)``, which should be ``|p0><p0|``.
    Both are in delta normalization, so the position one has kernel
    ``1/dq^2`` at ``(q0, q0)``: ``op_projector(g, q0) * (1/dq)``.
    """
    if (q0 is None) == (p0 is None):
        raise ValueError("give exactly one of q0 or p0")
    total = np.zeros((g.N, g.N), dtype=complex)
    if q0 is not None:
        g.index_of(q0, what="q0")
        for p in g.pw:
            total += g.dpw * phase_point_op(g, q0, p, wrap=False).K
    else:
        for q in g.qh:
            total += 0.5 * g.dq * phase_point_op(g, q, p0, wrap=False).K
    return OperatorKernel(g, total)


def _test_packets(g: GridSpec, q0: float, p0: float) -> list[np.ndarray]:
    from .states import wavepacket

    offsets = ((0.3, -0.2), (-0.4, 0.5), (0.0, 0.0))
    # the unwrapped reflection through q0 only covers |q - q0| <= L - |q0|;
    # keep 7 sigma of every packet inside that window
    sigma = min(1.0, (g.L - abs(q0) - 0.4) / 7.0)
    if sigma <= 0:
        raise ValueError(f"q0={q0!r} leaves no room for test packets inside the window")
    return [wavepacket(g, q0 + a, p0 + b, sigma) for a, b in offsets]


def anticom_check(g: GridSpec, q0: float, p0: float, *, tol_q: float = 1e-12,
                  tol_p: float = 1e-8) -> list[CheckEntry]:
    """Anticommutators ``{q, W}/2 = q0 W`` and ``{p, W}/2 = p0 W``.

    The position identity is checked entrywise on the anti-diagonal kernel.
    The momentum identity involves the spectral momentum operator, so it is
    checked on wavepackets near ``(q0, p0)``; the packets narrow as ``q0``
    nears the edge, so the bound is meaningful for interior ``q0``
    (roughly ``|q0| <= 3 L / 8``).
    """
    W = phase_point_op(g, q0, p0, wrap=False)
    q = g.q
    Dq = (0.5 * (q[:, None] + q[None, :]) - q0) * W.K
    dq_err = float(np.abs(Dq).max() / np.abs(W.K).max())
    P = op_momentum(g)
    dp_err = 0.0
    for psi in _test_packets(g, q0, p0):
        Wpsi = apply(W, psi)
        lhs = 0.5 * (apply(P, Wpsi) + apply(W, apply(P, psi))) - p0 * Wpsi
        dp_err = max(dp_err, float(np.linalg.norm(lhs) / np.linalg.norm(Wpsi)))
    tag = f"(q0={q0:g},p0={p0:g})"
    return [
        CheckEntry(f"wigner.anticom_q{tag}", dq_err, tol_q, {"N": g.N}),
        CheckEntry(f"wigner.anticom_p{tag}", dp_err, tol_p, {"N": g.N}),
    ]


def symplectic_fourier_sum(g: GridSpec, q0: float, p0: float, cutoff: float = 1.0,
                           n_k: int | None = None) -> OperatorKernel:
    """``sum dx dk / (2 pi hbar)^2 exp(-i (x p0 - k q0)/hbar) exp(i (x p - k q)/hbar)``.

    ``x`` runs over every lattice shift, ``k`` over ``n_k`` midpoint nodes of
    ``[-K, K]`` with ``K = cutoff * 2 pi hbar / dq``.  At ``cutoff = 1`` the
    ``k`` nodes cover one full period of the lattice phases.
    """
    if cutoff <= 0:
        raise ValueError("cutoff must be positive")
    n_k = 8 * g.N if n_k is None else n_k
    K = cutoff * 2 * np.pi * g.hbar / g.dq
    dk = 2 * K / n_k
    ks = -K + (np.arange(n_k) + 0.5) * dk
    hb = g.hbar
    S = g.q[:, None] + g.q[None, :]
    half_phase = np.exp(-0.5j * np.multiply.outer(S, ks) / hb)  # (a, b, k)
    kw = dk * np.exp(1j * ks * q0 / hb)
    total = np.zeros((g.N, g.N), dtype=complex)
    for n in range(-(g.N - 1), g.N):
        x = n * g.dq
        shift = op_weyl(g, x, 0.0, wrap=False).K  # delta(q_b - q_a - x) / dq
        mask = shift != 0
        kphase = half_phase[mask] @ kw
        term = np.zeros_like(total)
        term[mask] = shift[mask] * kphase
        total += g.dq * np.exp(-1j * x * p0 / hb) * term
    return OperatorKernel(g, total / (2 * np.pi * hb) ** 2)


def symplectic_fourier_check(g: GridSpec, q0: float, p0: float, cutoff: float = 1.0,
                             *, tol: float = 1e-2) -> CheckEntry:
    """Reconstruct ``W(q0, p0)`` from Weyl operators; max deviation over ``max|W|``."""
    W = phase_point_op(g, q0, p0, wrap=False)
    R = symplectic_fourier_sum(g, q0, p0, cutoff)
    err = float(np.abs(R.K - W.K).max() / np.abs(W.K).max())
    return CheckEntry(
        f"wigner.symplectic_fourier(q0={q0:g},p0={p0:g},cutoff={cutoff:g})",
        err,
        tol,
        {"N": g.N, "cutoff": cutoff},
    )
