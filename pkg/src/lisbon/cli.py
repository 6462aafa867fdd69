"""Command-line front end: exact tables, single evaluations, verification suites."""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .contour import QuadratureSpec, lisbon_F, lisbon_Ftilde, lisbon_Phi
from .entire import EntireFn
from .errors import LisbonError, MismatchedArity
from .polyroots import SigmaPoint, fmt_complex
from .report import SCHEMA_VERSION, TOOL_VERSION, dumps, timed
from .suites import (
    LEMMAS,
    SuiteConfig,
    suite_equivalence,
    suite_kernels,
    suite_lagrange,
    suite_lemmas,
    suite_systems,
)
from .traces import (
    derived_newton_symbolic,
    lagrange_interp,
    newton_symbolic,
    trace_form,
    trace_T,
    vector_trace,
)

MAX_K, MAX_W, MAX_M = 6, 10, 10


def _k_list(text: str) -> list:
    """'3', '2,4' or '2-5'."""
    out = []
    for part in text.split(","):
        lo, sep, hi = part.partition("-")
        out += list(range(int(lo), int(hi) + 1)) if sep else [int(lo)]
    return out


def _common(p: argparse.ArgumentParser):
    g = p.add_argument_group("common")
    g.add_argument("--tol", type=float, default=1e-12, help="quadrature tolerance")
    g.add_argument("--m-start", type=int, default=64, help="initial quadrature nodes")
    g.add_argument("--m-cap", type=int, default=2**20, help="maximum quadrature nodes")
    g.add_argument("--seed", type=int, default=0, help="seed for sampled points")
    g.add_argument("--json", action="store_true", help="machine-readable output")
    g.add_argument("--timing", action="store_true", help="record runtime_ms in reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lisbon", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_ in (("dn-table", "derived Newton polynomials"), ("newton-table", "Newton sums")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--max-m", type=int, required=True)
        _common(p)

    p = sub.add_parser("eval", help="evaluate one integral or trace")
    p.add_argument("kind", choices=["F", "Ftilde", "Phi", "T", "Ttilde", "VT", "interp"])
    p.add_argument("--f", required=True, help="poly:c0,c1,... or exp:a")
    p.add_argument("--sigma", required=True, help="comma-separated complex values")
    p.add_argument("--k", type=int, help="expected number of sigma values")
    p.add_argument("--cross-check", action="store_true", help="also print |integral - trace|")
    _common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=["equivalence", "systems", "kernels", "lemmas", "all"])
    p.add_argument("--k", type=_k_list, help="k values: 3, 2,4 or 2-5")
    p.add_argument("--max-w", type=int, default=8)
    p.add_argument("--max-m", type=int, default=10)
    p.add_argument("--f", action="append", help="function spec (repeatable)")
    p.add_argument("--samples", type=int, help="sample points per k")
    p.add_argument("--lemma", action="append", choices=LEMMAS)
    p.add_argument("--system", default="S2", choices=["S0", "S1", "S2", "all"])
    _common(p)
    return parser


def _spec(args) -> QuadratureSpec:
    return QuadratureSpec(tol=args.tol, m_start=args.m_start, m_cap=args.m_cap)


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_table(args) -> int:
    if args.k < 1 or args.max_m < 0:
        raise SystemExit("lisbon: error: need k >= 1 and max-m >= 0")
    if args.command == "dn-table":
        rows = [(f"DN_{m}", derived_newton_symbolic(args.k, m)) for m in range(-args.k + 1, args.max_m + 1)]
        kind = "dn"
    else:
        rows = [(f"N_{m}", newton_symbolic(args.k, m)) for m in range(args.max_m + 1)]
        kind = "newton"
    payload = {
        "schema": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "kind": kind,
        "k": args.k,
        "rows": [{"name": n, "poly": str(p)} for n, p in rows],
    }
    _emit(args, payload, "\n".join(f"{n} = {p}" for n, p in rows))
    return 0


def _clean(z: complex, scale: float) -> complex:
    """Drop real or imaginary parts that are rounding noise relative to scale."""
    eps = 1e-14 * max(1.0, scale)
    return complex(0.0 if abs(z.real) < eps else z.real, 0.0 if abs(z.imag) < eps else z.imag)


def _render(value) -> str:
    if isinstance(value, complex):
        return fmt_complex(_clean(value, abs(value)))
    vals = [complex(x) for x in value]
    scale = max(abs(x) for x in vals)
    return "(" + ", ".join(fmt_complex(_clean(x, scale)) for x in vals) + ")"


def cmd_eval(args) -> int:
    f = EntireFn.parse(args.f)
    sigma = SigmaPoint.parse(args.sigma)
    if args.k is not None and args.k != sigma.k:
        raise MismatchedArity(f"--k {args.k} but sigma has {sigma.k} entries")
    spec = _spec(args)
    kind = args.kind
    deviation = None
    if kind in ("F", "Ftilde"):
        fn, tr = (lisbon_F, trace_T) if kind == "F" else (lisbon_Ftilde, trace_form)
        value = fn(f, sigma, spec)
        if args.cross_check:
            deviation = abs(value - tr(f, sigma))
    elif kind == "Phi":
        value = lisbon_Phi(f, sigma, spec)
        if args.cross_check:
            deviation = float(max(abs(a - b) for a, b in zip(value, vector_trace(f, sigma))))
    elif kind == "T":
        value = trace_T(f, sigma)
        if args.cross_check:
            deviation = abs(value - lisbon_F(f, sigma, spec))
    elif kind == "Ttilde":
        value = trace_form(f, sigma)
        if args.cross_check:
            deviation = abs(value - lisbon_Ftilde(f, sigma, spec))
    elif kind == "VT":
        value = vector_trace(f, sigma)
        if args.cross_check:
            deviation = float(max(abs(a - b) for a, b in zip(value, lisbon_Phi(f, sigma, spec))))
    else:
        value = list(lagrange_interp(f, sigma, spec).coeffs)
    rendered = _render(value)
    payload = {
        "schema": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "kind": "eval",
        "quantity": kind,
        "f": args.f,
        "sigma": str(sigma),
        "value": rendered,
    }
    text = rendered
    if deviation is not None:
        payload["deviation"] = float(deviation)
        text += f"\ndeviation = {float(deviation):.3e}"
    _emit(args, payload, text)
    return 0


def _check_bounds(args, ks):
    if any(not 1 <= k <= MAX_K for k in ks):
        raise SystemExit(f"lisbon: error: k must lie in [1, {MAX_K}]")
    if not 0 <= args.max_w <= MAX_W:
        raise SystemExit(f"lisbon: error: max-w must lie in [0, {MAX_W}]")
    if not 1 <= args.max_m <= MAX_M:
        raise SystemExit(f"lisbon: error: max-m must lie in [1, {MAX_M}]")


def cmd_verify(args) -> int:
    suites = ["equivalence", "systems", "kernels", "lemmas"] if args.suite == "all" else [args.suite]
    default_ks = {"equivalence": [2, 3, 4, 5, 6], "systems": [2, 3, 4, 5], "kernels": [2, 3, 4], "lemmas": [2, 3, 4, 5]}
    ks_all = args.k or []
    _check_bounds(args, ks_all)
    spec = _spec(args)
    reports: list = []
    for suite in suites:
        ks = args.k or default_ks[suite]
        cfg = SuiteConfig(ks=tuple(ks), seed=args.seed, spec=spec, max_m=args.max_m, max_w=args.max_w)
        if args.f:
            cfg.functions = tuple(args.f)
        if suite == "equivalence":
            if args.samples is not None:
                cfg.samples = args.samples
            with timed(reports, args.timing):
                reports += suite_equivalence(cfg)
            if not args.f:
                cfg.functions = ("exp:1",)
            with timed(reports, args.timing):
                reports += suite_lagrange(cfg)
        elif suite == "systems":
            if not args.f:
                cfg.functions = ("exp:1",)
            with timed(reports, args.timing):
                reports += suite_systems(cfg, 2 if args.samples is None else args.samples)
        elif suite == "kernels":
            systems = ["S0", "S1", "S2"] if args.system == "all" else [args.system]
            for name in systems:
                with timed(reports, args.timing):
                    reports += suite_kernels(ks, args.max_w, (name,))
        else:
            for lemma in args.lemma or LEMMAS:
                lks = [k for k in (args.k or [1, 2, 3, 4]) if k <= 4] if lemma == "poids" else ks
                m = min(args.max_m, 8) if lemma == "poids" and not args.k else args.max_m
                with timed(reports, args.timing):
                    reports += suite_lemmas(lks, m, (lemma,), args.seed)
    if args.json:
        print(dumps(reports))
    else:
        for r in reports:
            print(r.line())
        print(f"{sum(r.passed for r in reports)}/{len(reports)} checks passed")
    return 0 if all(r.passed for r in reports) else 1


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        QuadratureSpec(tol=args.tol, m_start=args.m_start, m_cap=args.m_cap)
    except ValueError as exc:
        print(f"lisbon: error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command in ("dn-table", "newton-table"):
            return cmd_table(args)
        if args.command == "eval":
            return cmd_eval(args)
        return cmd_verify(args)
    except (LisbonError, ArithmeticError, ValueError, IndexError) as exc:
        print(f"lisbon: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
