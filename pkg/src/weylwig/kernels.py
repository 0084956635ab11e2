"""The product-trace kernel and its square root.

Argument convention, used everywhere in the package::

    kernel_K((q, p), (q', p')) = exp(i (q - q') (p - p') / hbar)

This is the form that makes ``Tr(AB)`` equal the quadruple phase-space
integral of ``A_l(q, p) K B_l(q', p')``.  The composition law for left
representatives evaluates the same function at ``((q, p'), (q', p))``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .grid import GridSpec
from .report import CheckEntry

__all__ = [
    "PhasePoint",
    "kernel_K",
    "kernel_xi",
    "extrapolate_to_zero",
    "xi_convolution",
    "check_K_marginals",
    "check_xi_sqrt",
]


class PhasePoint(NamedTuple):
    q: float
    p: float


def _qp(a):
    return np.asarray(a[0], dtype=float), np.asarray(a[1], dtype=float)


def kernel_K(g: GridSpec, a, b):
    """Four-vertex Bargmann kernel; pure phase, symmetric, translation invariant.

    ``a`` and ``b`` are ``(q, p)`` pairs whose entries may be arrays.
    """
    q, p = _qp(a)
    q2, p2 = _qp(b)
    return np.exp(1j * (q - q2) * (p - p2) / g.hbar)


def kernel_xi(g: GridSpec, a, b):
    """Square-root kernel ``sqrt(2/(pi hbar)) exp(2i (q - q')(p - p') / hbar)``."""
    q, p = _qp(a)
    q2, p2 = _qp(b)
    return np.sqrt(2.0 / (np.pi * g.hbar)) * np.exp(2j * (q - q2) * (p - p2) / g.hbar)


def extrapolate_to_zero(h, values):
    """Polynomial (Neville) extrapolation of ``values(h)`` to ``h = 0``.

    ``values`` may carry trailing dimensions; the first axis matches ``h``.
    """
    h = np.asarray(h, dtype=float)
    T = [np.asarray(v, dtype=complex) for v in values]
    n = len(h)
    for m in range(1, n):
        T = [
            (h[i] * T[i + 1] - h[i + m] * T[i]) / (h[i] - h[i + m])
            for i in range(n - m)
        ]
    return T[0]


def _check_damping(damping) -> np.ndarray:
    d = np.asarray(damping, dtype=float)
    if d.ndim != 1 or len(d) < 2 or np.any(d <= 0) or np.any(np.diff(d) >= 0):
        raise ValueError(f"damping must be a strictly decreasing sequence of positive reals, got {damping!r}")
    return d


def xi_convolution(g: GridSpec, a, b, eps: float, *, digits: float = 36.0) -> complex:
    """``int dq'' dp'' xi((q'',p''), a) xi((q'',p''), b) exp(-eps (q''^2 + p''^2))``.

    Trapezoid quadrature on a square window whose half-width makes the
    regulator fall below ``exp(-digits)``.  The node spacing resolves the
    largest phase gradient inside the window.
    """
    qa, pa = map(float, a)
    qb, pb = map(float, b)
    hb = g.hbar
    R = np.sqrt(digits / eps) + max(abs(qa), abs(qb), abs(pa), abs(pb))
    # phase gradient in v is 2(2u - qa - qb)/hbar; keep the aliased image
    # below the regulator floor as well
    omega = 2.0 * (2.0 * R + abs(qa + qb)) / hb + 2.0 * (abs(pa + pb)) / hb
    h = np.pi / (omega + 2.0 * np.sqrt(digits * eps))
    n = int(np.ceil(R / h))
    x = np.linspace(-R, R, 2 * n + 1)
    w = np.full(x.size, x[1] - x[0])
    w[[0, -1]] *= 0.5
    damp = np.exp(-eps * x ** 2) * w
    total = 0.0j
    step = max(1, 2_000_000 // x.size)
    for i in range(0, x.size, step):
        u = x[i:i + step, None]
        ph = ((u - qa) * (x[None, :] - pa) + (u - qb) * (x[None, :] - pb)) * (2.0 / hb)
        total += np.sum(damp[i:i + step, None] * damp[None, :] * np.exp(1j * ph))
    return complex(2.0 / (np.pi * hb) * total)


def check_K_marginals(g: GridSpec, a, test_fn, *, tol: float = 1e-3) -> CheckEntry:
    """Smeared marginals of ``K`` on the conjugate lattice.

    Checks ``sum dq' dp' K(a; q', p') f(q') = 2 pi hbar f(a.q)`` and the
    momentum analog ``sum dq' dp' K(a; q', p') f(p') = 2 pi hbar f(a.p)``.
    ``test_fn`` is a callable evaluated on the lattices and at ``a``.
    """
    q, p = map(float, a)
    Q, P = np.meshgrid(g.q, g.p, indexing="ij")
    Kab = kernel_K(g, (q, p), (Q, P))
    w = g.dq * g.dp
    two_pi_hbar = 2 * np.pi * g.hbar
    errs = {}
    for label, samples, ref in (
        ("q", np.asarray(test_fn(Q), dtype=complex), test_fn(q)),
        ("p", np.asarray(test_fn(P), dtype=complex), test_fn(p)),
    ):
        num = w * np.sum(Kab * samples)
        ref = two_pi_hbar * complex(ref)
        diff = abs(num - ref)
        errs[label] = diff / abs(ref) if ref != 0 else diff
    return CheckEntry(
        f"kernels.K_marginals(q={q:g},p={p:g})",
        max(errs.values()),
        tol,
        {"q_marginal_err": errs["q"], "p_marginal_err": errs["p"], "N": g.N},
    )


def check_xi_sqrt(g: GridSpec, a, b, damping=(0.4, 0.2, 0.1), *, tol: float = 5e-2) -> CheckEntry:
    """Damped quadrature of the xi self-convolution, extrapolated to zero damping.

    Compares against ``kernel_K(a, b)``; the meta block records the raw error
    at every damping value and the extrapolated error.
    """
    d = _check_damping(damping)
    target = complex(kernel_K(g, a, b))
    vals = [xi_convolution(g, a, b, e) for e in d]
    ext = complex(extrapolate_to_zero(d, vals))
    raw = [abs(v - target) for v in vals]
    err = abs(ext - target)
    return CheckEntry(
        f"kernels.xi_sqrt(a=({a[0]:g},{a[1]:g}),b=({b[0]:g},{b[1]:g}))",
        err,
        tol,
        {
            "damping": d.tolist(),
            "raw_errors": raw,
            "extrapolated": [ext.real, ext.imag],
            "target": [target.real, target.imag],
            "modulus": abs(ext),
        },
    )
