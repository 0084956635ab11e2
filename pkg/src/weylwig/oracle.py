"""Slow, independent references.

Nothing here touches the library's sampled kernels or transforms.  States
are given as analytic position kernels ``<x|rho|y>`` built from
``scipy.special`` polynomials, and the Weyl symbol is a plain trapezoid
quadrature of the chord integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .report import CheckEntry, CheckReport

__all__ = [
    "OracleConfig",
    "FAMILIES",
    "analytic_kernel",
    "quad_weyl_symbol",
    "closed_form_wigner",
    "trace_oracle",
    "validate_closed_forms",
]

FAMILIES = ("coherent", "fock", "thermal")


@dataclass(frozen=True)
class OracleConfig:
    """Quadrature settings.

    The chord integral runs over ``[-half_width, half_width]`` with spacing
    ``base_step / refinement``.
    """

    refinement: int = 4
    damping: tuple = (0.4, 0.3, 0.2)
    base_step: float = 0.25
    half_width: float = 24.0

    def __post_init__(self):
        if int(self.refinement) != self.refinement or self.refinement < 2:
            raise ValueError(f"refinement must be an integer >= 2, got {self.refinement!r}")
        d = tuple(float(x) for x in self.damping)
        if not d or any(x <= 0 for x in d):
            raise ValueError("damping schedule must be a non-empty list of positive reals")
        object.__setattr__(self, "damping", d)

    @property
    def step(self) -> float:
        return self.base_step / self.refinement


def _hermite_fn(n: int, x, sigma: float):
    u = np.asarray(x, dtype=float) / sigma
    norm = 1.0 / math.sqrt(2.0 ** n * math.factorial(n) * math.sqrt(math.pi) * sigma)
    return norm * special.eval_hermite(n, u) * np.exp(-0.5 * u ** 2)


def _thermal_levels(nbar: float, cutoff: float = 1e-17):
    if nbar == 0:
        return np.array([1.0])
    r = nbar / (1.0 + nbar)
    nmax = int(math.ceil(math.log(cutoff) / math.log(r)))
    return (1.0 - r) * r ** np.arange(nmax + 1)


def analytic_kernel(family: str, params, hbar: float = 1.0):
    """Closed-form ``<x|rho|y>`` for one of the validated state families.

    ``coherent``: ``(q0, p0, sigma)``; ``fock``: ``(n, sigma)``;
    ``thermal``: ``(nbar, sigma)``.
    """
    if family == "coherent":
        q0, p0, sigma = map(float, params)

        def psi(x):
            x = np.asarray(x, dtype=float)
            return (math.pi * sigma ** 2) ** -0.25 * np.exp(
                -((x - q0) ** 2) / (2 * sigma ** 2) + 1j * p0 * x / hbar
            )

        return lambda x, y: psi(x) * np.conj(psi(y))
    if family == "fock":
        n, sigma = int(params[0]), float(params[1])
        return lambda x, y: _hermite_fn(n, x, sigma) * _hermite_fn(n, y, sigma)
    if family == "thermal":
        nbar, sigma = float(params[0]), float(params[1])
        w = _thermal_levels(nbar)

        def kern(x, y):
            return sum(wn * _hermite_fn(n, x, sigma) * _hermite_fn(n, y, sigma)
                       for n, wn in enumerate(w))

        return kern
    raise ValueError(f"unsupported state family {family!r}; choose from {FAMILIES}")


def quad_weyl_symbol(kernel, q: float, p: float, refinement: int | None = None, *,
                     hbar: float = 1.0, config: OracleConfig | None = None) -> complex:
    """Trapezoid quadrature of ``int dq' <q - q'/2|A|q + q'/2> exp(i p q'/hbar)``."""
    cfg = config or OracleConfig()
    if refinement is not None:
        cfg = OracleConfig(refinement, cfg.damping, cfg.base_step, cfg.half_width)
    n = int(round(cfg.half_width / cfg.step))
    s = np.linspace(-cfg.half_width, cfg.half_width, 2 * n + 1)
    f = kernel(q - 0.5 * s, q + 0.5 * s) * np.exp(1j * p * s / hbar)
    return complex(np.trapezoid(f, s))


def closed_form_wigner(family: str, params, q, p, hbar: float = 1.0):
    """Textbook Wigner functions of the validated families (real, broadcasting)."""
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    if family == "coherent":
        q0, p0, sigma = map(float, params)
        return np.exp(-((q - q0) / sigma) ** 2 - (sigma * (p - p0) / hbar) ** 2) / (math.pi * hbar)
    if family == "fock":
        n, sigma = int(params[0]), float(params[1])
        r2 = (q / sigma) ** 2 + (sigma * p / hbar) ** 2
        return (-1) ** n / (math.pi * hbar) * np.exp(-r2) * special.eval_laguerre(n, 2 * r2)
    if family == "thermal":
        nbar, sigma = float(params[0]), float(params[1])
        s = 2 * nbar + 1
        r2 = (q / sigma) ** 2 + (sigma * p / hbar) ** 2
        return np.exp(-r2 / s) / (math.pi * hbar * s)
    raise ValueError(f"unsupported state family {family!r}; choose from {FAMILIES}")


def trace_oracle(A, B) -> complex:
    """``Tr(AB)`` from the dimensionless matrices ``dq K``."""
    if A.grid != B.grid:
        raise ValueError(f"grid mismatch: {A.grid} vs {B.grid}")
    return complex(np.trace(A.matrix @ B.matrix))


_GATE_CASES = (
    ("coherent", (0.0, 0.0, 1.0)),
    ("coherent", (1.5, -0.7, 0.8)),
    ("fock", (1, 1.0)),
    ("fock", (2, 1.0)),
    ("fock", (4, 1.3)),
    ("thermal", (1.0, 1.0)),
    ("thermal", (0.5, 0.9)),
)


def validate_closed_forms(seed: int = 0, n_points: int = 20, tol: float = 1e-8,
                          hbar: float = 1.0) -> CheckReport:
    """Closed forms against chord quadrature at random points, per family case."""
    rng = np.random.default_rng(seed)
    report = CheckReport()
    for family, params in _GATE_CASES:
        kern = analytic_kernel(family, params, hbar)
        worst = 0.0
        for q, p in rng.uniform(-2.0, 2.0, size=(n_points, 2)):
            ref = float(closed_form_wigner(family, params, q, p, hbar))
            got = quad_weyl_symbol(kern, q, p, hbar=hbar) / (2 * math.pi * hbar)
            worst = max(worst, abs(got - ref) / abs(ref))
        tag = ",".join(f"{x:g}" for x in params)
        report.add(CheckEntry(f"oracle.closed_form.{family}({tag})", worst, tol,
                              {"points": n_points, "seed": seed}))
    return report
