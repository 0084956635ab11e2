"""Symmetric position lattice and the plane-wave conventions built on it.

Every other module samples continuum objects on a :class:`GridSpec`.  The
position lattice is half-offset and reflection-symmetric, the conjugate
momentum lattice is fixed by ``dq * dp * N = 2 pi hbar`` and plane waves are
``<q|p> = (2 pi hbar)^(-1/2) exp(i q p / hbar)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "GridSpec",
    "make_grid",
    "to_momentum",
    "from_momentum",
    "plane_waves",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GridSpec:
    """Discretization of the real line used for operator kernels.

    Only ``N``, ``L`` and ``hbar`` are stored; everything else is derived.

    Attributes
    ----------
    N : int
        Number of position samples.
    L : float
        Half-width of the position window.
    hbar : float
        Reduced Planck constant.
    """

    N: int
    L: float
    hbar: float = 1.0

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or isinstance(self.N, bool):
            raise ValueError(f"N must be an integer, got {self.N!r}")
        if self.N < 4:
            raise ValueError(f"N must be >= 4, got {self.N}")
        if not np.isfinite(self.L) or self.L <= 0:
            raise ValueError(f"L must be a positive real, got {self.L}")
        if not np.isfinite(self.hbar) or self.hbar <= 0:
            raise ValueError(f"hbar must be a positive real, got {self.hbar}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "L", float(self.L))
        object.__setattr__(self, "hbar", float(self.hbar))

    # position lattice
    @cached_property
    def dq(self) -> float:
        return 2.0 * self.L / self.N

    @cached_property
    def offsets(self) -> np.ndarray:
        """Half-integer (even N) or integer (odd N) index offsets ``j - (N-1)/2``."""
        return _frozen(np.arange(self.N) - (self.N - 1) / 2.0)

    @cached_property
    def q(self) -> np.ndarray:
        return _frozen(self.offsets * self.dq)

    # conjugate momentum lattice
    @cached_property
    def dp(self) -> float:
        return 2.0 * np.pi * self.hbar / (self.N * self.dq)

    @cached_property
    def p(self) -> np.ndarray:
        return _frozen(self.offsets * self.dp)

    # Wigner lattice: rows on half steps of dq, columns spaced dp/2
    @cached_property
    def dpw(self) -> float:
        return self.dp / 2.0

    @cached_property
    def pw_index0(self) -> int:
        """Column index of ``p = 0`` on the Wigner momentum lattice."""
        return self.N // 2

    @cached_property
    def pw(self) -> np.ndarray:
        return _frozen((np.arange(self.N) - self.pw_index0) * self.dpw)

    @cached_property
    def qh(self) -> np.ndarray:
        """Half-step rows ``q_M = (M - (N-1)) dq / 2`` for ``M = 0 .. 2N-2``.

        Even ``M`` are the lattice points ``q_(M/2)``, odd ``M`` the midpoints.
        """
        return _frozen((np.arange(2 * self.N - 1) - (self.N - 1)) * (self.dq / 2.0))

    def reflect_index(self, j):
        """Index map ``j -> N-1-j``; negates ``q`` exactly."""
        return self.N - 1 - np.asarray(j)

    def index_of(self, q0: float, *, what: str = "q") -> int:
        """Lattice index of ``q0``; raises if ``q0`` is not a lattice point."""
        x = q0 / self.dq + (self.N - 1) / 2.0
        j = int(round(x))
        if abs(x - j) > 1e-9 or not 0 <= j < self.N:
            raise ValueError(f"{what}={q0!r} is not a point of the position lattice")
        return j

    def half_index_of(self, q0: float, *, what: str = "q") -> int:
        """Half-step row index ``M`` of ``q0`` (lattice point or midpoint)."""
        x = 2.0 * q0 / self.dq + (self.N - 1)
        m = int(round(x))
        if abs(x - m) > 1e-9 or not 0 <= m <= 2 * self.N - 2:
            raise ValueError(f"{what}={q0!r} is not on the half-step lattice (spacing dq/2)")
        return m

    def shift_of(self, q0: float, *, what: str = "q0") -> int:
        """Integer ``s`` with ``q0 = s * dq``; raises for unaligned shifts."""
        x = q0 / self.dq
        s = int(round(x))
        if abs(x - s) > 1e-9:
            raise ValueError(f"{what}={q0!r} is not an integer multiple of dq={self.dq!r}")
        return s

    def to_dict(self) -> dict:
        return {"N": self.N, "L": self.L, "hbar": self.hbar}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "GridSpec":
        try:
            return cls(int(d["N"]), float(d["L"]), float(d["hbar"]))
        except KeyError as exc:
            raise ValueError(f"grid description lacks field {exc}") from None


def make_grid(N: int, L: float, hbar: float = 1.0) -> GridSpec:
    """Build a :class:`GridSpec`; ``N >= 4``, ``L > 0``, ``hbar > 0``."""
    return GridSpec(N, L, hbar)


def plane_waves(g: GridSpec, p=None) -> np.ndarray:
    """Matrix ``<q_j|p_k>`` with the continuum normalization, shape (N, len(p))."""
    p = g.p if p is None else np.asarray(p, dtype=float)
    return np.exp(1j * np.outer(g.q, p) / g.hbar) / np.sqrt(2.0 * np.pi * g.hbar)


def _check_len(g: GridSpec, v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.shape != (g.N,):
        raise ValueError(f"expected a vector of length {g.N}, got shape {v.shape}")
    return v


def to_momentum(g: GridSpec, v) -> np.ndarray:
    """Position samples to momentum samples on ``g.p``.

    ``out[k] = sum_j dq <p_k|q_j> v[j]``; with this weighting
    ``dp * |out|^2`` sums to ``dq * |v|^2``.
    """
    v = _check_len(g, v)
    return g.dq * (plane_waves(g).conj().T @ v)


def from_momentum(g: GridSpec, vt) -> np.ndarray:
    """Inverse of :func:`to_momentum` (conjugate phases, weight ``dp``)."""
    vt = _check_len(g, vt)
    return g.dp * (plane_waves(g) @ vt)
