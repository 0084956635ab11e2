"""Operator kernels on the position lattice and the basic operator zoo.

An operator is stored through its sampled position kernel
``K[a, b] = <q_a|A|q_b>``; a single ``dq`` appears in every product and trace,
so continuum formulas carry over with Riemann weights.  The identity kernel
is therefore ``delta_ab / dq``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .grid import GridSpec, plane_waves

__all__ = [
    "OperatorKernel",
    "DensityState",
    "trace",
    "matmul",
    "dagger",
    "expectation",
    "commutator",
    "apply",
    "op_identity",
    "op_position",
    "op_momentum",
    "op_parity",
    "op_displacement",
    "op_weyl",
    "op_ordered_delta",
    "op_projector",
]


@dataclass(frozen=True, eq=False)
class OperatorKernel:
    """Sampled kernel ``<q_a|A|q_b>`` of an operator on ``grid``."""

    grid: GridSpec
    K: np.ndarray

    def __post_init__(self):
        K = np.array(self.K, dtype=complex)
        n = self.grid.N
        if K.shape != (n, n):
            raise ValueError(f"kernel must have shape {(n, n)}, got {K.shape}")
        K.setflags(write=False)
        object.__setattr__(self, "K", K)

    @property
    def matrix(self) -> np.ndarray:
        """Dimensionless matrix ``dq * K`` acting on lattice vectors."""
        return self.grid.dq * self.K

    def __add__(self, other):
        _same_grid(self, other)
        return OperatorKernel(self.grid, self.K + other.K)

    def __sub__(self, other):
        _same_grid(self, other)
        return OperatorKernel(self.grid, self.K - other.K)

    def __mul__(self, c):
        return OperatorKernel(self.grid, self.K * c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return matmul(self, other)

    def to_dict(self) -> dict:
        return {
            "grid": self.grid.to_dict(),
            "re": self.K.real.tolist(),
            "im": self.K.imag.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "OperatorKernel":
        g = GridSpec.from_dict(d["grid"])
        K = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)
        return cls(g, K)


@dataclass(frozen=True, eq=False)
class DensityState(OperatorKernel):
    """Kernel validated as a density operator (hermitian, unit trace, PSD)."""

    herm_defect: float = field(default=np.nan)
    trace_defect: float = field(default=np.nan)
    min_eig: float = field(default=np.nan)

    @classmethod
    def from_kernel(cls, A: OperatorKernel | np.ndarray, grid: GridSpec | None = None,
                    *, tol: float = 1e-10) -> "DensityState":
        """Validate ``A`` and wrap it; raises :class:`ValidationError` on failure."""
        if isinstance(A, OperatorKernel):
            grid, K = A.grid, A.K
        else:
            K = np.asarray(A, dtype=complex)
        scale = max(np.abs(K).max(), np.finfo(float).tiny)
        herm = float(np.abs(K - K.conj().T).max() / scale)
        tr = grid.dq * np.trace(K)
        trace_defect = float(abs(tr - 1.0))
        M = grid.dq * 0.5 * (K + K.conj().T)
        ev = np.linalg.eigvalsh(M)
        if herm > tol:
            raise ValidationError(f"kernel is not hermitian: relative defect {herm:.3e}")
        if trace_defect > tol:
            raise ValidationError(f"trace is {tr:.12g}, not 1")
        # round-off in eigvalsh scales like N * eps * ||M||
        eig_tol = max(tol, 10 * grid.N * np.finfo(float).eps * np.abs(ev).max())
        if ev[0] < -eig_tol:
            raise ValidationError(f"negative eigenvalue {ev[0]:.3e}")
        return cls(grid, K, herm, trace_defect, float(ev[0]))

    def validation(self) -> dict:
        return {
            "herm_defect": self.herm_defect,
            "trace_defect": self.trace_defect,
            "min_eig": self.min_eig,
        }

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["validation"] = self.validation()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "DensityState":
        return cls.from_kernel(OperatorKernel.from_dict(d))


def _same_grid(A: OperatorKernel, B: OperatorKernel) -> None:
    if A.grid != B.grid:
        raise ValueError(f"grid mismatch: {A.grid} vs {B.grid}")


def trace(A: OperatorKernel) -> complex:
    """``dq * sum_a K[a, a]``."""
    return complex(A.grid.dq * np.trace(A.K))


def matmul(A: OperatorKernel, B: OperatorKernel) -> OperatorKernel:
    """Kernel of the product ``A B``: ``dq * K_A @ K_B``."""
    _same_grid(A, B)
    return OperatorKernel(A.grid, A.grid.dq * (A.K @ B.K))


def dagger(A: OperatorKernel) -> OperatorKernel:
    return OperatorKernel(A.grid, A.K.conj().T)


def expectation(rho: OperatorKernel, A: OperatorKernel) -> complex:
    """``Tr(rho A)``."""
    _same_grid(rho, A)
    return complex(rho.grid.dq ** 2 * np.einsum("ab,ba->", rho.K, A.K))


def commutator(A: OperatorKernel, B: OperatorKernel) -> OperatorKernel:
    return matmul(A, B) - matmul(B, A)


def apply(A: OperatorKernel, psi) -> np.ndarray:
    """Act with ``A`` on sampled wavefunction values."""
    return A.grid.dq * (A.K @ np.asarray(psi, dtype=complex))


# the operator zoo

def op_identity(g: GridSpec) -> OperatorKernel:
    return OperatorKernel(g, np.eye(g.N) / g.dq)


def op_position(g: GridSpec) -> OperatorKernel:
    return OperatorKernel(g, np.diag(g.q) / g.dq)


def op_momentum(g: GridSpec) -> OperatorKernel:
    """Momentum kernel ``dp * sum_k <q_a|p_k> p_k <p_k|q_b>``.

    Spectral derivative on the conjugate lattice; on the half-offset lattice
    it is antiperiodic rather than periodic for even ``N``.
    """
    W = plane_waves(g)
    return OperatorKernel(g, g.dp * (W * g.p) @ W.conj().T)


def op_parity(g: GridSpec) -> OperatorKernel:
    """``<q|P|q'> = delta(q + q')`` as the exact index reflection."""
    return OperatorKernel(g, np.eye(g.N)[::-1] / g.dq)


def op_projector(g: GridSpec, q0: float) -> OperatorKernel:
    """``|q0><q0|`` for a lattice point: single diagonal entry ``1/dq``."""
    j = g.index_of(q0, what="q0")
    K = np.zeros((g.N, g.N))
    K[j, j] = 1.0 / g.dq
    return OperatorKernel(g, K)


def op_displacement(g: GridSpec, q0: float, p0: float, *, wrap: bool = True) -> OperatorKernel:
    """``U(q0, p0) = exp(i (p0 q - q0 p) / hbar)`` for a lattice-aligned ``q0``.

    Built from the factorized form ``exp(i p0 q/hbar) T(q0) exp(-i p0 q0 / 2hbar)``
    where ``T(q0)`` shifts wavefunctions by ``+q0``.  ``U q U^dagger = q - q0``
    away from the edges, so ``U|psi>`` is centered at ``(<q> + q0, <p> + p0)``.

    With ``wrap=True`` the shift is cyclic and ``U`` is exactly unitary; with
    ``wrap=False`` samples shifted out of the window are dropped.
    """
    s = g.shift_of(q0)
    n = g.N
    a = np.arange(n)
    b = a - s
    keep = slice(None) if wrap else (b >= 0) & (b < n)
    K = np.zeros((n, n), dtype=complex)
    phase = np.exp(1j * p0 * g.q / g.hbar) * np.exp(-0.5j * p0 * q0 / g.hbar)
    K[a[keep], (b % n)[keep]] = phase[keep] / g.dq
    return OperatorKernel(g, K)


def op_weyl(g: GridSpec, x: float, k: float, *, wrap: bool = True) -> OperatorKernel:
    """Weyl operator ``exp(i (x p - k q) / hbar)`` for a lattice-aligned ``x``.

    Away from wrapped entries the kernel is
    ``delta(q_b - q_a - x) / dq * exp(-i k (q_a + q_b) / 2hbar)``; it coincides
    with ``U(-x, -k)``.
    """
    return op_displacement(g, -x, -k, wrap=wrap)


def op_ordered_delta(g: GridSpec, q0: float, p0: float, order: str = "standard") -> OperatorKernel:
    """``delta(q - q0) delta(p - p0)`` (standard) or its adjoint (antistandard)."""
    j = g.index_of(q0, what="q0")
    row = np.exp(1j * p0 * (q0 - g.q) / g.hbar) / (2 * np.pi * g.hbar)
    K = np.zeros((g.N, g.N), dtype=complex)
    K[j, :] = row / g.dq
    A = OperatorKernel(g, K)
    if order == "standard":
        return A
    if order == "antistandard":
        return dagger(A)
    raise ValueError(f"order must be 'standard' or 'antistandard', got {order!r}")
