"""The operator systems S0, S1, S2 and the vector system S3.

S0 = {T(m)}, S1 = S0 + {A(p,q)}, S2 = {Ttilde(m)} + {A(p,q)}, with
p in [1, k-1], q in [2, k], m in [2, k].  S3 is the first-order system
(-1)^(k-h) d_h Phi = d_k(A^(k-h) Phi), h in [1, k-1], on C^k-valued Phi.

Everything polynomial is checked exactly; entire (non-polynomial) data is
checked numerically through Cauchy-formula derivatives.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .contour import DEFAULT_SPEC, DERIVATIVE_SPEC, QuadratureSpec, lisbon_F, lisbon_Phi, sigma_partial
from .entire import EntireFn
from .errors import MismatchedArity
from .exactpoly import SigmaPoly, monomial_basis, weight_exponents
from .polyroots import SigmaPoint, _as_point, companion, companion_symbolic
from .report import Report
from .traces import trace_poly_symbolic, vector_trace_symbolic
from .weyl import (
    A_op,
    T_op,
    Ttilde_op,
    U0_op,
    Um1_op,
    WeylOp,
    commutator,
    partial_op,
    weyl_apply,
    weyl_compose,
)

__all__ = [
    "OperatorSystem",
    "KernelBasis",
    "operator_system",
    "check_system_symbolic",
    "check_system_numeric",
    "check_S3",
    "graded_kernel",
    "u_minus1_injectivity",
    "constant_S3_solutions",
    "closedness_check",
    "reconstruct_trace_from_phi",
    "right_multiplication_expansion",
    "operator_identities",
    "proportional",
]

NUMERIC_TOL = 1e-6


@dataclass(frozen=True)
class OperatorSystem:
    k: int
    name: str
    generators: tuple  # ((label, WeylOp), ...)

    def labels(self) -> list:
        return [lab for lab, _ in self.generators]

    def op(self, label: str) -> WeylOp:
        for lab, G in self.generators:
            if lab == label:
                return G
        raise KeyError(label)

    def __iter__(self):
        return iter(self.generators)


def operator_system(name: str, k: int) -> OperatorSystem:
    name = name.upper()
    gens = []
    if name in ("S1", "S2"):
        for p in range(1, k):
            for q in range(2, k + 1):
                gens.append((f"A({p},{q})", A_op(k, p, q)))
    if name in ("S0", "S1"):
        gens += [(f"T({m})", T_op(k, m)) for m in range(2, k + 1)]
    elif name == "S2":
        gens += [(f"Ttilde({m})", Ttilde_op(k, m)) for m in range(2, k + 1)]
    else:
        raise ValueError(f"unknown system {name!r}; expected S0, S1 or S2")
    return OperatorSystem(k, name, tuple(gens))


# --------------------------------------------------------------------------
# checks on a single function
# --------------------------------------------------------------------------


def check_system_symbolic(sys: OperatorSystem, g: SigmaPoly) -> Report:
    if g.k != sys.k:
        raise MismatchedArity(f"system has k={sys.k}, polynomial has k={g.k}")
    residuals = {lab: weyl_apply(G, g) for lab, G in sys}
    ok = all(r.is_zero() for r in residuals.values())
    return Report(
        check=f"annihilation_{sys.name}",
        params={"k": sys.k, "g": str(g), "tol": 0},
        residual=0.0 if ok else float(sum(not r.is_zero() for r in residuals.values())),
        passed=ok,
        details={"residuals": {lab: str(r) for lab, r in residuals.items()}},
    )


def _deriv_key(beta: tuple) -> tuple:
    idx = []
    for h, e in enumerate(beta):
        idx += [h + 1] * e
    return tuple(idx)


def _apply_numeric(G: WeylOp, derivs: Callable, sigma: SigmaPoint) -> complex:
    total = 0j
    for (alpha, beta), c in G.terms.items():
        coef = complex(c)
        for v, e in zip(sigma.values, alpha):
            if e:
                coef *= v**e
        total += coef * derivs(_deriv_key(beta))
    return total


def _derivative_table(Fn: Callable, sigma: SigmaPoint, spec: QuadratureSpec) -> Callable:
    cache: dict = {}

    def get(key: tuple):
        key = tuple(sorted(key))
        if key not in cache:
            if len(key) == 0:
                cache[key] = complex(Fn(sigma))
            elif len(key) == 1:
                cache[key] = sigma_partial(Fn, sigma, key[0], spec=spec)
            elif len(key) == 2:
                cache[key] = sigma_partial(Fn, sigma, key[0], key[1], spec=spec)
            else:
                raise ValueError("only operators of order <= 2 are supported numerically")
        return cache[key]

    return get


def check_system_numeric(
    sys: OperatorSystem,
    Fn: Callable,
    samples: Sequence,
    spec: QuadratureSpec = DERIVATIVE_SPEC,
    tol: float = NUMERIC_TOL,
    label: str = "",
) -> Report:
    """Apply every generator to Fn at each sample point; pass iff all |residual| < tol."""
    worst = 0.0
    per_sample = []
    for s in samples:
        s = _as_point(s)
        derivs = _derivative_table(Fn, s, spec)
        res = {lab: abs(_apply_numeric(G, derivs, s)) for lab, G in sys}
        per_sample.append({"sigma": str(s), "residuals": res})
        worst = max([worst, *res.values()])
    rep = Report.from_residual(
        f"numeric_{sys.name}", {"k": sys.k, "fn": label, "samples": len(samples)}, worst, tol
    )
    rep.passed = worst < tol
    rep.details = {"per_sample": per_sample}
    return rep


# --------------------------------------------------------------------------
# S3
# --------------------------------------------------------------------------


def _is_symbolic(Phi) -> bool:
    return isinstance(Phi, (list, tuple)) and Phi and isinstance(Phi[0], SigmaPoly)


def check_S3(
    Phi,
    samples: Sequence | None = None,
    spec: QuadratureSpec = DERIVATIVE_SPEC,
    tol: float = NUMERIC_TOL,
    label: str = "",
) -> Report:
    """(-1)^(k-h) d_h Phi = d_k(A^(k-h) Phi) for all h in [1, k-1].

    Phi is either a list of k SigmaPolys (exact check) or a callable
    sigma -> C^k evaluated at the sample points.
    """
    if _is_symbolic(Phi):
        k = Phi[0].k
        if len(Phi) != k:
            raise ValueError("Phi needs k components")
        A = companion_symbolic(k)
        bad = []
        for h in range(1, k):
            lhs = [c.partial(h).scale((-1) ** (k - h)) for c in Phi]
            rhs = [c.partial(k) for c in (A ** (k - h)) @ list(Phi)]
            if lhs != rhs:
                bad.append(h)
        return Report(
            check="S3_exact",
            params={"k": k, "phi": label or [str(c) for c in Phi], "tol": 0},
            residual=float(len(bad)),
            passed=not bad,
            details={"failing_h": bad},
        )
    worst = 0.0
    k = None
    for s in samples or ():
        s = _as_point(s)
        k = s.k
        for h in range(1, k):
            lhs = (-1) ** (k - h) * np.asarray(sigma_partial(Phi, s, h, spec=spec))

            def moved(S, h=h):
                return np.linalg.matrix_power(companion(S), k - h) @ np.asarray(Phi(S))

            rhs = np.asarray(sigma_partial(moved, s, k, spec=spec))
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    rep = Report.from_residual(
        "S3_numeric", {"k": k, "phi": label, "samples": len(samples or ())}, worst, tol
    )
    rep.passed = worst < tol
    return rep


def _constant_conditions(k: int) -> list:
    """Rows of the linear conditions d_k(A^p c) = 0, p in [1, k-1], on constant c."""
    A = companion_symbolic(k)
    rows = []
    for p in range(1, k):
        dAp = (A**p).partial(k)
        for r in range(k):
            monos = {}
            for j in range(k):
                for gamma, c in dAp[r, j].terms.items():
                    monos.setdefault(gamma, [Fraction(0)] * k)[j] += c.re
            rows.extend(monos.values())
    return rows


def constant_S3_solutions(k: int) -> list:
    """Basis (reduced echelon, Fraction entries) of constant solutions of S3."""
    if k < 1:
        raise ValueError("k >= 1 required")
    rows = _constant_conditions(k)
    return [tuple(v) for v in linalg.nullspace(rows, k)]


def closedness_check(
    Phi,
    samples: Sequence | None = None,
    spec: QuadratureSpec = DERIVATIVE_SPEC,
    tol: float = NUMERIC_TOL,
    label: str = "",
) -> Report:
    """dA.Phi has only its last component nonzero, and that 1-form is closed.

    The last component is sum_h (-1)^(h-1) phi_{k-h} d sigma_h, so closedness
    reads (-1)^(h-1) d_p phi_{k-h} = (-1)^(p-1) d_h phi_{k-p} for all h, p.
    """
    symbolic = _is_symbolic(Phi)
    if symbolic:
        k = Phi[0].k
    else:
        k = _as_point(samples[0]).k
    A = companion_symbolic(k)
    structural = all(
        A.partial(h)[r, c].is_zero() for h in range(1, k + 1) for r in range(k - 1) for c in range(k)
    )
    if symbolic:
        bad = []
        for h in range(1, k + 1):
            for p in range(h + 1, k + 1):
                lhs = Phi[k - h].partial(p).scale((-1) ** (h - 1))
                rhs = Phi[k - p].partial(h).scale((-1) ** (p - 1))
                if lhs != rhs:
                    bad.append((h, p))
        ok = structural and not bad
        return Report(
            check="closedness_exact",
            params={"k": k, "phi": label, "tol": 0},
            residual=float(len(bad) + (not structural)),
            passed=ok,
            details={"structural": structural, "failing_pairs": bad},
        )
    worst = 0.0
    for s in samples:
        s = _as_point(s)
        D = {p: np.asarray(sigma_partial(Phi, s, p, spec=spec)) for p in range(1, k + 1)}
        for h in range(1, k + 1):
            for p in range(h + 1, k + 1):
                diff = (-1) ** (h - 1) * D[p][k - h] - (-1) ** (p - 1) * D[h][k - p]
                worst = max(worst, abs(diff))
    rep = Report.from_residual(
        "closedness_numeric", {"k": k, "phi": label, "samples": len(samples)}, worst, tol
    )
    rep.passed = structural and worst < tol
    rep.details = {"structural": structural}
    return rep


def reconstruct_trace_from_phi(
    f: EntireFn,
    samples: Sequence | None = None,
    k: int | None = None,
    spec: QuadratureSpec = DEFAULT_SPEC,
    dspec: QuadratureSpec = DERIVATIVE_SPEC,
    tol: float = NUMERIC_TOL,
) -> Report:
    """d_h T(g) = (-1)^(k-h-1) Phi(f)_{k-h}, g the primitive of (-1)^k f with g(0) = 0.

    With samples, both sides are evaluated numerically; with only k and a
    polynomial f, the identity is checked exactly.
    """
    if samples is None:
        if k is None:
            raise ValueError("give sample points or k for the exact variant")
        g = f.scale((-1) ** k).antiderivative()
        Tg = trace_poly_symbolic(g, k, "T")
        Phi = vector_trace_symbolic(f, k)
        bad = [
            h
            for h in range(1, k + 1)
            if Tg.partial(h) != Phi[k - h].scale((-1) ** ((k - h - 1) % 2))
        ]
        return Report(
            check="reconstruct_trace_exact",
            params={"k": k, "f": str(f), "tol": 0},
            residual=float(len(bad)),
            passed=not bad,
            details={"failing_h": bad},
        )
    worst = 0.0
    for s in samples:
        s = _as_point(s)
        k = s.k
        g = f.scale((-1) ** k).antiderivative()
        Phi = lisbon_Phi(f, s, spec)
        for h in range(1, k + 1):
            d = sigma_partial(lambda S: lisbon_F(g, S, spec), s, h, spec=dspec)
            target = (-1) ** ((k - h - 1) % 2) * Phi[k - h]
            worst = max(worst, abs(d - target))
    rep = Report.from_residual(
        "reconstruct_trace_numeric", {"k": k, "f": str(f), "samples": len(samples)}, worst, tol
    )
    rep.passed = worst < tol
    return rep


# --------------------------------------------------------------------------
# graded kernels
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelBasis:
    k: int
    w: int
    basis: tuple
    system: str = ""

    @property
    def dim(self) -> int:
        return len(self.basis)


def _images_matrix(ops: Sequence[WeylOp], basis: Sequence[SigmaPoly]) -> list:
    """Stack, for each operator, the coordinates of its images of the basis."""
    rows = []
    for G in ops:
        images = [weyl_apply(G, b) for b in basis]
        targets = sorted({g for im in images for g in im.terms})
        for gamma in targets:
            row = []
            for im in images:
                c = im.coeff(gamma)
                if not c.is_real:
                    raise ValueError("kernel computation expects rational coefficients")
                row.append(c.re)
            rows.append(row)
    return rows


def graded_kernel(sys: OperatorSystem, w: int) -> KernelBasis:
    """Basis of the pure-weight-w polynomials killed by every generator."""
    if w < 0:
        raise ValueError("w must be >= 0")
    # graded-lex order, leading monomial first, so echelon vectors are monic
    basis = monomial_basis(sys.k, w)[::-1]
    gammas = weight_exponents(sys.k, w)[::-1]
    rows = _images_matrix([G for _, G in sys], basis)
    vecs = linalg.nullspace(rows, len(basis)) if rows else linalg.reduce_basis(
        [[Fraction(int(i == j)) for j in range(len(basis))] for i in range(len(basis))],
        len(basis),
    )
    polys = tuple(
        SigmaPoly(sys.k, {g: c for g, c in zip(gammas, v) if c}) for v in vecs
    )
    return KernelBasis(sys.k, w, polys, sys.name)


def proportional(a: SigmaPoly, b: SigmaPoly) -> bool:
    """True iff a = c b for some nonzero scalar c."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    gamma, cb = next(iter(b.terms.items()))
    ca = a.coeff(gamma)
    return bool(ca) and a == b.scale(ca / cb)


def u_minus1_injectivity(k: int, m: int, within: OperatorSystem | None = None) -> Report:
    """Is U_-1^m injective on the pure-weight-m polynomials?

    U_-1^m lands in weight 0, the constants, so on the full weight-m piece it
    can only be injective when that piece is one-dimensional.  With `within`,
    the question is asked on the weight-m solutions of that system instead.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if within is None:
        basis = monomial_basis(k, m)
        where = "weight_piece"
    else:
        basis = list(graded_kernel(within, m).basis)
        where = f"kernel_{within.name}"
    U = Um1_op(k)
    images = []
    for b in basis:
        for _ in range(m):
            b = weyl_apply(U, b)
        images.append(b)
    rows = [[im.constant_term().re for im in images]] if basis else []
    rk = linalg.rank(rows, len(basis)) if basis else 0
    kernel = linalg.nullspace(rows, len(basis)) if basis else []
    witnesses = [
        str(sum((b.scale(c) for b, c in zip(basis, v) if c), SigmaPoly.zero(k))) for v in kernel
    ]
    return Report(
        check="u_minus1_injectivity",
        params={"k": k, "m": m, "domain": where, "dim": len(basis), "rank": rk, "tol": 0},
        residual=float(len(basis) - rk),
        passed=rk == len(basis),
        details={"kernel": witnesses},
    )


# --------------------------------------------------------------------------
# ideal stability and operator identities
# --------------------------------------------------------------------------


def _express(C: WeylOp, ops: Sequence[WeylOp]) -> list | None:
    """Rational c with C = sum c_j ops_j, or None."""
    keys = sorted({key for G in ops for key in G.terms} | set(C.terms))
    rows = []
    rhs = []
    for key in keys:
        row = []
        for G in ops:
            c = G.terms.get(key)
            row.append(Fraction(0) if c is None else c.re)
        rows.append(row)
        c = C.terms.get(key)
        rhs.append(Fraction(0) if c is None else c.re)
    return linalg.solve(rows, rhs)


def right_multiplication_expansion(sys: OperatorSystem, label: str, V: str) -> dict | None:
    """Write G.V (G a generator, V = U0 or U-1) as sum_i Q_i G_i.

    Uses G.V = V.G - [V, G] with [V, G] solved for as a constant-coefficient
    combination of the generators; returns {label: Q} or None if [V, G] is
    not such a combination.
    """
    k = sys.k
    Vop = U0_op(k) if V == "U0" else Um1_op(k)
    G = sys.op(label)
    C = commutator(Vop, G)
    labels = sys.labels()
    coeffs = _express(C, [sys.op(lab) for lab in labels])
    if coeffs is None:
        return None
    Q = {lab: WeylOp.scalar(k, -c) for lab, c in zip(labels, coeffs) if c}
    Q[label] = Q.get(label, WeylOp.zero(k)) + Vop
    total = sum((weyl_compose(q, sys.op(lab)) for lab, q in Q.items()), WeylOp.zero(k))
    if total != weyl_compose(G, Vop):
        return None
    return Q


def operator_identities(k: int) -> list:
    """(name, lhs, rhs) for the identities behind the S1 -> S2 derivative maps."""
    rels = []
    d = lambda h: partial_op(k, h)  # noqa: E731
    for m in range(2, k + 1):
        for h in range(1, k + 1):
            rels.append(
                (f"Ttilde({m}).d{h} = d{h}.T({m})",
                 weyl_compose(Ttilde_op(k, m), d(h)), weyl_compose(d(h), T_op(k, m)))
            )
            rels.append(
                (f"[T({m}),d{h}] = -d{h}.d{m}", commutator(T_op(k, m), d(h)),
                 -weyl_compose(d(h), d(m)))
            )
    for p in range(1, k):
        for q in range(2, k + 1):
            A = A_op(k, p, q)
            for h in range(1, k + 1):
                rels.append((f"[A({p},{q}),d{h}] = 0", commutator(A, d(h)), WeylOp.zero(k)))
            rels.append(
                (f"d{q}.T({p + 1}) - d{p + 1}.T({q}) = A({p},{q}).d1",
                 weyl_compose(d(q), T_op(k, p + 1)) - weyl_compose(d(p + 1), T_op(k, q)),
                 weyl_compose(A, d(1)))
            )
    return rels
