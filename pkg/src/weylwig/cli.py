"""Command-line interface: ``weylwig {wigner,check,quantize}``.

Exit codes: 0 success, 1 a check failed, 2 usage or invalid configuration,
3 a validation or bound failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .errors import SupportError, ValidationError
from .grid import GridSpec
from .operators import DensityState
from .states import state_cat, state_coherent, state_fock, state_thermal
from .suite import SUITES, run_suites
from .wigner import (
    WIGNER,
    PhaseSpaceFunction,
    marginal_p,
    marginal_q,
    momentum_diagonal,
    position_diagonal,
    weyl_quantize,
    weyl_symbol,
    wigner_distribution,
)

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_VALIDATION = 0, 1, 2, 3


class UsageError(ValueError):
    pass


_STATE_ARGS = {
    # kind: (builder, required, optional defaults)
    "coherent": (state_coherent, 2, (1.0,)),
    "fock": (state_fock, 1, (1.0,)),
    "cat": (state_cat, 1, (0.0, 1.0, 0.0)),
    "thermal": (state_thermal, 1, (1.0,)),
}


def parse_state(text: str):
    """``kind:params`` -> (kind, list of floats).

    ``coherent:q0,p0[,sigma]``, ``fock:n[,sigma]``,
    ``cat:q0[,p0,sigma,phase]``, ``thermal:nbar[,sigma]``.
    """
    kind, _, rest = text.partition(":")
    if kind not in _STATE_ARGS:
        raise UsageError(f"unknown state kind {kind!r}; choose from {sorted(_STATE_ARGS)}")
    try:
        vals = [float(x) for x in rest.split(",")] if rest else []
    except ValueError:
        raise UsageError(f"state parameters must be numbers: {text!r}") from None
    _, nreq, opt = _STATE_ARGS[kind]
    if not nreq <= len(vals) <= nreq + len(opt):
        raise UsageError(f"{kind} takes {nreq} to {nreq + len(opt)} parameters, got {len(vals)}")
    vals += list(opt[len(vals) - nreq:])
    if kind == "fock":
        if vals[0] != int(vals[0]):
            raise UsageError(f"Fock level must be an integer, got {vals[0]}")
        vals[0] = int(vals[0])
    return kind, vals


def build_state(g: GridSpec, kind: str, vals) -> DensityState:
    return _STATE_ARGS[kind][0](g, *vals)


def _threads(args) -> int:
    raw = args.threads if args.threads is not None else os.environ.get("WEYLWIG_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"thread count must be an integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"thread count must be >= 1, got {n}")
    return n


def _grid(args) -> GridSpec:
    return GridSpec(args.N, args.L, args.hbar)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _stem(out: Path) -> Path:
    return out.with_suffix("") if out.suffix == ".csv" else out


def cmd_wigner(args) -> int:
    g = _grid(args)
    kind, vals = parse_state(args.state)
    rho = build_state(g, kind, vals)
    F = wigner_distribution(rho)
    v = F.values.real
    bound = 1.0 / (np.pi * g.hbar)
    mq = marginal_q(F) - position_diagonal(rho).real
    mp = marginal_p(F) - momentum_diagonal(rho).real
    summary = {
        "grid": g.to_dict(),
        "state": args.state,
        "min": float(v.min()),
        "max": float(v.max()),
        "bound": bound,
        "bound_ok": bool(np.abs(F.values).max() <= bound + 1e-9),
        "imag_max": float(np.abs(F.values.imag).max()),
        "normalization": float(F.integral().real),
        "marginal_q_l1_error": float(g.dq * np.abs(mq).sum()),
        "marginal_p_l1_error": float(g.dpw * np.abs(mp).sum()),
        "validation": rho.validation(),
    }
    out = Path(args.out)
    stem = _stem(out)
    csv_path = out if out.suffix == ".csv" else out.with_suffix(".csv")
    csv_path.write_text(F.to_csv())
    env = F.envelope(kind="wigner", state=args.state, csv=csv_path.name)
    Path(f"{stem}.json").write_text(_dump(env))
    Path(f"{stem}.summary.json").write_text(_dump(summary))
    if not summary["bound_ok"]:
        print(f"bound violated: max|W| = {np.abs(F.values).max():.6g} > 1/(pi hbar)", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_check(args) -> int:
    g = _grid(args)
    names = None
    if args.suite:
        names = [s for item in args.suite for s in item.split(",") if s]
        bad = [s for s in names if s not in SUITES]
        if bad:
            raise UsageError(f"unknown suite(s) {bad}; choose from {sorted(SUITES)}")
    report = run_suites(g, names, seed=args.seed, tol=args.tol, threads=_threads(args))
    doc = report.to_dict()
    doc["grid"] = g.to_dict()
    doc["seed"] = args.seed
    text = _dump(doc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    for e in report.failures():
        print(e.line(), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_CHECK


def cmd_quantize(args) -> int:
    g = _grid(args)
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None
    F = PhaseSpaceFunction.from_csv(text, g, WIGNER)
    if args.kind == "wigner":
        F = F * (2 * np.pi * g.hbar)
    A = weyl_quantize(F)
    doc = A.to_dict()
    doc["source"] = {"csv": str(args.input), "kind": args.kind}
    if args.roundtrip:
        back = weyl_symbol(A).values
        scale = max(np.abs(F.values).max(), np.finfo(float).tiny)
        doc["roundtrip_residual"] = float(np.abs(back - F.values).max() / scale)
    text = _dump(doc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, default=64, help="number of lattice points")
    common.add_argument("--L", type=float, default=8.0, help="half-width of the position window")
    common.add_argument("--hbar", type=float, default=1.0)
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $WEYLWIG_THREADS or 1)")

    parser = argparse.ArgumentParser(prog="weylwig", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    w = sub.add_parser("wigner", parents=[common], help="Wigner function of a reference state")
    w.add_argument("--state", required=True, help="kind:params, e.g. fock:1 or coherent:0,0,1")
    w.add_argument("--out", default="w.csv", help="CSV path; .json and .summary.json go alongside")
    w.set_defaults(func=cmd_wigner)

    c = sub.add_parser("check", parents=[common], help="run the identity suite")
    c.add_argument("--suite", action="append", help=f"suite name(s): {', '.join(SUITES)}")
    c.add_argument("--tol", type=float, default=None, help="override every tolerance")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", default=None, help="report path (default stdout)")
    c.set_defaults(func=cmd_check)

    q = sub.add_parser("quantize", parents=[common], help="operator kernel from a phase-space CSV")
    q.add_argument("input", help="CSV on the wigner lattice (header q,p,re,im)")
    q.add_argument("--kind", choices=("symbol", "wigner"), default="symbol",
                   help="input is a Weyl symbol or a Wigner function (scaled by 2 pi hbar)")
    q.add_argument("--out", default=None, help="operator JSON path (default stdout)")
    q.add_argument("--roundtrip", action="store_true", help="report the symbol round-trip residual")
    q.set_defaults(func=cmd_quantize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (SupportError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
