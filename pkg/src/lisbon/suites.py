"""Verification batteries shared by the CLI and the acceptance tests.

Every suite returns a list of Reports in a deterministic order.  Random
sample points come from numpy's default generator seeded with (seed, k), so
the same flags always produce the same points.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .contour import (
    DEFAULT_SPEC,
    DERIVATIVE_SPEC,
    QuadratureSpec,
    lisbon_F,
    lisbon_F_log,
    lisbon_Ftilde,
    lisbon_Phi,
)
from .entire import EntireFn
from .exactpoly import SigmaPoly, partitions_count
from .polyroots import (
    SigmaPoint,
    calcul_matriciel_check,
    companion,
    companion_derivative_identity_check,
    companion_symbolic,
    discriminant,
    p_values,
    roots_ld,
)
from .report import Report
from .systems import (
    check_S3,
    check_system_numeric,
    check_system_symbolic,
    closedness_check,
    constant_S3_solutions,
    graded_kernel,
    operator_identities,
    operator_system,
    proportional,
    reconstruct_trace_from_phi,
    right_multiplication_expansion,
    u_minus1_injectivity,
)
from .traces import (
    derived_newton_symbolic,
    lagrange_interp,
    newton_symbolic,
    phi_to_pi,
    pi_to_phi,
    quotient_eval,
    trace_form,
    trace_T,
    vector_trace,
    vector_trace_symbolic,
)
from .weyl import (
    Um1_op,
    WeylOp,
    commutator_relations,
    make_generator,
    pure_weight,
    weight_from_commutator,
    weyl_apply,
)

LEMMAS = (
    "derive",
    "dn-vanish",
    "newton-derivative",
    "dn-monic",
    "commutators",
    "weight",
    "poids",
    "companion",
    "calcul",
    "identities",
    "ideal",
)

DEFAULT_FUNCTIONS = tuple([f"poly:{','.join(['0'] * n + ['1'])}" for n in range(9)] + ["exp:1"])


@dataclass
class SuiteConfig:
    ks: Sequence[int] = (2, 3)
    samples: int = 10
    seed: int = 0
    bound: float = 5.0
    min_disc: float = 1e-4
    functions: Sequence[str] = DEFAULT_FUNCTIONS
    spec: QuadratureSpec = DEFAULT_SPEC
    dspec: QuadratureSpec = DERIVATIVE_SPEC
    max_m: int = 10
    max_w: int = 8
    tol: float = 1e-9
    log_tol: float = 1e-8
    numeric_tol: float = 1e-6
    extra: dict = field(default_factory=dict)


def sample_sigmas(
    k: int, n: int, seed: int = 0, bound: float = 5.0, min_disc: float = 1e-4
) -> list:
    """n points with |sigma_h| <= bound and |discriminant| > min_disc."""
    rng = np.random.default_rng([seed, k])
    out = []
    while len(out) < n:
        r = bound * np.sqrt(rng.random(k))
        t = 2 * np.pi * rng.random(k)
        s = SigmaPoint([complex(x) for x in r * np.exp(1j * t)])
        if abs(discriminant(s)) > min_disc:
            out.append(s)
    return out


def _fn(spec: str) -> EntireFn:
    return EntireFn.parse(spec)


# --------------------------------------------------------------------------
# equivalence: Lisbon integrals against root sums
# --------------------------------------------------------------------------


def suite_equivalence(cfg: SuiteConfig) -> list:
    reports = []
    for k in cfg.ks:
        pts = sample_sigmas(k, cfg.samples, cfg.seed, cfg.bound, cfg.min_disc)
        for fspec in cfg.functions:
            f = _fn(fspec)
            worst = {"F=T": 0.0, "Ftilde=Ttilde": 0.0, "Phi=VT": 0.0, "F_log=F": 0.0}
            for s in pts:
                F = lisbon_F(f, s, cfg.spec, extended=True)
                worst["F=T"] = max(worst["F=T"], float(abs(F - trace_T(f, s, extended=True))))
                Ft = lisbon_Ftilde(f, s, cfg.spec, extended=True)
                worst["Ftilde=Ttilde"] = max(
                    worst["Ftilde=Ttilde"], float(abs(Ft - trace_form(f, s, extended=True)))
                )
                Ph = lisbon_Phi(f, s, cfg.spec, extended=True)
                worst["Phi=VT"] = max(
                    worst["Phi=VT"], float(np.max(np.abs(Ph - vector_trace(f, s, extended=True))))
                )
                FL = lisbon_F_log(f, s, cfg.spec, extended=True)
                worst["F_log=F"] = max(worst["F_log=F"], float(abs(FL - F)))
            for name, res in worst.items():
                tol = cfg.log_tol if name == "F_log=F" else cfg.tol
                params = {"k": k, "f": fspec, "samples": len(pts), "seed": cfg.seed}
                r = Report.from_residual(f"equivalence_{name}", params, res, tol)
                r.passed = res < tol
                reports.append(r)
    return reports


def _interior_points(s: SigmaPoint, rng, n: int) -> list:
    """Points inside the disc spanned by the roots (hence inside the contour)."""
    rho = max(1.0, float(np.max(np.abs(roots_ld(s)))))
    r = rho * np.sqrt(rng.random(n))
    t = 2 * np.pi * rng.random(n)
    return [complex(x) for x in r * np.exp(1j * t)]


def suite_lagrange(cfg: SuiteConfig, points_per_sigma: int = 5) -> list:
    """Division identity, Phi -> Pi bridge, and the Phi <-> Pi round trip."""
    reports = []
    for k in cfg.ks:
        pts = sample_sigmas(k, cfg.samples, cfg.seed, cfg.bound, cfg.min_disc)
        rng = np.random.default_rng([cfg.seed, k, 1])
        for fspec in cfg.functions:
            f = _fn(fspec)
            div = bridge = trip = 0.0
            for s in pts:
                Pi = lagrange_interp(f, s, cfg.spec, extended=True)
                for z in _interior_points(s, rng, points_per_sigma):
                    zz = np.clongdouble(z)
                    Q = quotient_eval(f, s, z, cfg.spec, extended=True)
                    lhs = f(np.asarray([zz]))[0] - Pi(zz) - p_values(s, np.asarray([zz]))[0] * Q
                    div = max(div, float(abs(lhs)))
                Phi = lisbon_Phi(f, s, cfg.spec, extended=True)
                Pi2 = phi_to_pi(s.values, list(Phi))
                bridge = max(
                    bridge, max(float(abs(a - b)) for a, b in zip(Pi2.coeffs, Pi.coeffs))
                )
                back = pi_to_phi(s.values, Pi2)
                trip = max(trip, max(float(abs(a - b)) for a, b in zip(back, Phi)))
            params = {"k": k, "f": fspec, "samples": len(pts), "seed": cfg.seed}
            for name, res, tol in (
                ("division", div, cfg.tol),
                ("phi_to_pi", bridge, cfg.tol),
                ("roundtrip", trip, 1e-12),
            ):
                r = Report.from_residual(f"lagrange_{name}", params, res, tol)
                r.passed = res < tol
                reports.append(r)
    return reports


# --------------------------------------------------------------------------
# systems
# --------------------------------------------------------------------------


def suite_annihilation(ks: Sequence[int], max_m: int) -> list:
    """S0 and S1 kill N_m, S2 kills DN_m, for m in [0, max_m]."""
    reports = []
    for k in ks:
        for name in ("S0", "S1", "S2"):
            sys = operator_system(name, k)
            ref = derived_newton_symbolic if name == "S2" else newton_symbolic
            failing = [
                m for m in range(max_m + 1) if not check_system_symbolic(sys, ref(k, m)).passed
            ]
            reports.append(
                Report(
                    f"annihilation_{name}",
                    {"k": k, "max_m": max_m, "target": "DN" if name == "S2" else "N", "tol": 0},
                    float(len(failing)),
                    not failing,
                    details={"failing_m": failing},
                )
            )
    return reports


def suite_s3(ks: Sequence[int], cfg: SuiteConfig, f: EntireFn, numeric_samples: int) -> list:
    reports = []
    for k in ks:
        for n in range(7):
            Phi = vector_trace_symbolic(EntireFn.monomial(n), k)
            reports.append(check_S3(Phi, label=f"Phi(z^{n})"))
            reports.append(check_S3(list(companion_symbolic(k) @ Phi), label=f"A.Phi(z^{n})"))
        basis = constant_S3_solutions(k)
        expected = [tuple([0] * (k - 1) + [1])]
        ok = [tuple(v) for v in basis] == expected
        reports.append(
            Report(
                "constant_S3_solutions",
                {"k": k, "dim": len(basis), "tol": 0},
                0.0 if ok else 1.0,
                ok,
                details={"basis": [[str(x) for x in v] for v in basis]},
            )
        )
        if numeric_samples:
            pts = sample_sigmas(k, numeric_samples, cfg.seed, min(cfg.bound, 2.0), cfg.min_disc)
            reports.append(
                check_S3(lambda S: lisbon_Phi(f, S, cfg.spec), pts, cfg.dspec, cfg.numeric_tol, str(f))
            )
            reports.append(
                check_S3(
                    lambda S: companion(S) @ lisbon_Phi(f, S, cfg.spec),
                    pts,
                    cfg.dspec,
                    cfg.numeric_tol,
                    f"A.Phi({f})",
                )
            )
    return reports


def suite_three_to_one(ks: Sequence[int], cfg: SuiteConfig, functions: Sequence[str], numeric_samples: int) -> list:
    """Closedness of the S3 one-form and recovery of T from Phi."""
    reports = []
    for k in ks:
        pts = sample_sigmas(k, numeric_samples, cfg.seed, min(cfg.bound, 2.0), cfg.min_disc)
        for fspec in functions:
            f = _fn(fspec)
            if f.is_polynomial:
                reports.append(closedness_check(vector_trace_symbolic(f, k), label=fspec))
                reports.append(reconstruct_trace_from_phi(f, k=k))
            if numeric_samples:
                reports.append(
                    closedness_check(
                        lambda S: lisbon_Phi(f, S, cfg.spec), pts, cfg.dspec, cfg.numeric_tol, fspec
                    )
                )
                reports.append(
                    reconstruct_trace_from_phi(f, pts, spec=cfg.spec, dspec=cfg.dspec, tol=cfg.numeric_tol)
                )
    return reports


def suite_systems(cfg: SuiteConfig, numeric_samples: int = 2) -> list:
    reports = suite_annihilation(cfg.ks, cfg.max_m)
    numeric_ks = [k for k in cfg.ks if k <= 3]
    for fspec in cfg.functions:
        f = _fn(fspec)
        if f.is_polynomial or not numeric_samples:
            continue
        for k in numeric_ks:
            pts = sample_sigmas(k, numeric_samples, cfg.seed, min(cfg.bound, 2.0), cfg.min_disc)
            for name, Fn in (
                ("S1", lambda S: lisbon_F(f, S, cfg.spec)),
                ("S2", lambda S: lisbon_Ftilde(f, S, cfg.spec)),
            ):
                r = check_system_numeric(
                    operator_system(name, k), Fn, pts, cfg.dspec, cfg.numeric_tol, fspec
                )
                r.params["seed"] = cfg.seed
                reports.append(r)
        reports += suite_s3(numeric_ks, cfg, f, numeric_samples)
    reports += suite_three_to_one(numeric_ks, cfg, ("poly:1", "poly:0,1", "poly:0,0,1"), 0)
    reports += suite_lemmas(cfg.ks, cfg.max_m, ("identities", "ideal"))
    return reports


# --------------------------------------------------------------------------
# graded kernels
# --------------------------------------------------------------------------


def suite_kernels(ks: Sequence[int], max_w: int, systems: Sequence[str] = ("S2",)) -> list:
    reports = []
    for name in systems:
        for k in ks:
            sys = operator_system(name, k)
            for w in range(max_w + 1):
                kb = graded_kernel(sys, w)
                if w == 0:
                    ref = SigmaPoly.constant(k, 1)
                elif name == "S2":
                    ref = derived_newton_symbolic(k, w)
                else:
                    ref = newton_symbolic(k, w)
                ok = kb.dim == 1 and proportional(kb.basis[0], ref)
                reports.append(
                    Report(
                        f"kernel_{name}",
                        {
                            "k": k,
                            "w": w,
                            "dim": kb.dim,
                            "weight_piece_dim": partitions_count(w, k),
                            "tol": 0,
                        },
                        0.0 if ok else float(abs(kb.dim - 1) or 1),
                        ok,
                        details={"basis": [str(b) for b in kb.basis]},
                    )
                )
    return reports


# --------------------------------------------------------------------------
# lemmas
# --------------------------------------------------------------------------


def _count_report(check: str, params: dict, failures: list) -> Report:
    return Report(
        check, dict(params, tol=0), float(len(failures)), not failures, details={"failures": failures}
    )


def _lemma_derive(k, max_m):
    U = Um1_op(k)
    bad = [
        m
        for m in range(-k + 2, max_m + 1)
        if weyl_apply(U, derived_newton_symbolic(k, m))
        != derived_newton_symbolic(k, m - 1).scale(m + k - 1)
    ]
    return [_count_report("lemma_derive", {"k": k, "max_m": max_m}, bad)]


def _lemma_dn_vanish(k, max_m):
    bad = [m for m in range(-k + 1, 0) if not derived_newton_symbolic(k, m).is_zero()]
    return [_count_report("lemma_dn_vanish", {"k": k}, bad)]


def _lemma_newton_derivative(k, max_m):
    bad = [
        m
        for m in range(1, max_m + 1)
        if newton_symbolic(k, m).partial(1) != derived_newton_symbolic(k, m - 1).scale(m)
    ]
    return [_count_report("lemma_newton_derivative", {"k": k, "max_m": max_m}, bad)]


def _lemma_dn_monic(k, max_m):
    bad = []
    for m in range(0, max_m + 1):
        dn = derived_newton_symbolic(k, m)
        lead = dn.coeff((m,) + (0,) * (k - 1))
        if dn.degree_in(1) != m or lead != 1 or dn.pure_weight() != m:
            bad.append(m)
    return [_count_report("lemma_dn_monic", {"k": k, "max_m": max_m}, bad)]


def _lemma_commutators(k, max_m):
    bad = [name for name, lhs, rhs in commutator_relations(k) if lhs != rhs]
    return [_count_report("lemma_commutators", {"k": k}, bad)]


def random_operator(k: int, rng, max_terms: int = 4, max_deg: int = 2) -> WeylOp:
    """A small random operator; pure weight about half the time."""
    n = int(rng.integers(1, max_terms + 1))
    terms = {}
    for _ in range(n):
        alpha = tuple(int(x) for x in rng.integers(0, max_deg + 1, k))
        beta = tuple(int(x) for x in rng.integers(0, max_deg + 1, k))
        terms[(alpha, beta)] = int(rng.integers(1, 6)) * (1 if rng.random() < 0.5 else -1)
    P = WeylOp(k, terms)
    if rng.random() < 0.5:
        comps = P.weight_decompose()
        P = comps[0][1]
    return P


def _lemma_weight(k, max_m, seed=0, n_random=50):
    rng = np.random.default_rng([seed, k, 2])
    ops = []
    for p in range(1, k):
        for q in range(2, k + 1):
            ops.append((f"A({p},{q})", make_generator(k, f"A({p},{q})")))
    for m in range(2, k + 1):
        ops.append((f"T({m})", make_generator(k, f"T({m})")))
        ops.append((f"Ttilde({m})", make_generator(k, f"Ttilde({m})")))
    for name in ("E", "U0", "U-1"):
        ops.append((name, make_generator(k, name)))
    ops += [(f"random{i}", random_operator(k, rng)) for i in range(n_random)]
    bad = [label for label, P in ops if P and weight_from_commutator(P) != pure_weight(P)]
    n_pure = sum(pure_weight(P) is not None for _, P in ops)
    return [
        _count_report(
            "lemma_weight", {"k": k, "operators": len(ops), "pure": n_pure, "seed": seed}, bad
        )
    ]


def _lemma_poids(k, max_m):
    return [u_minus1_injectivity(k, m) for m in range(1, max_m + 1)]


def _lemma_companion(k, max_m):
    return [companion_derivative_identity_check(k)]


def _lemma_calcul(k, max_m):
    return [calcul_matriciel_check(k)]


def _lemma_identities(k, max_m):
    bad = [name for name, lhs, rhs in operator_identities(k) if lhs != rhs]
    return [_count_report("operator_identities", {"k": k}, bad)]


def _lemma_ideal(k, max_m):
    out = []
    for name in ("S1", "S2"):
        sys = operator_system(name, k)
        bad = [
            f"{lab}.{V}"
            for lab in sys.labels()
            for V in ("U0", "U-1")
            if right_multiplication_expansion(sys, lab, V) is None
        ]
        out.append(_count_report(f"ideal_stability_{name}", {"k": k}, bad))
    return out


_LEMMA_FUNCS = {
    "derive": _lemma_derive,
    "dn-vanish": _lemma_dn_vanish,
    "newton-derivative": _lemma_newton_derivative,
    "dn-monic": _lemma_dn_monic,
    "commutators": _lemma_commutators,
    "weight": _lemma_weight,
    "poids": _lemma_poids,
    "companion": _lemma_companion,
    "calcul": _lemma_calcul,
    "identities": _lemma_identities,
    "ideal": _lemma_ideal,
}


def suite_lemmas(ks: Sequence[int], max_m: int, lemmas: Sequence[str] = LEMMAS, seed: int = 0) -> list:
    reports = []
    for lemma in lemmas:
        if lemma not in _LEMMA_FUNCS:
            raise ValueError(f"unknown lemma {lemma!r}; choose from {', '.join(LEMMAS)}")
        for k in ks:
            if lemma == "weight":
                reports += _lemma_weight(k, max_m, seed)
            else:
                reports += _LEMMA_FUNCS[lemma](k, max_m)
    return reports
