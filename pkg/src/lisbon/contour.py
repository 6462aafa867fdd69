"""Circle quadrature and the three Lisbon integrals.

All three integrals are taken over |zeta| = R with R = radius_bound(sigma),
which encloses every root and keeps P(zeta)/zeta^k within 1/2 of 1 so the
principal logarithm in the log-form of the first integral is well defined.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .entire import EntireFn
from .errors import QuadratureNoConvergence
from .polyroots import SigmaPoint, _as_point, p_values, radius_bound

__all__ = [
    "QuadratureSpec",
    "QuadratureResult",
    "DEFAULT_SPEC",
    "DERIVATIVE_SPEC",
    "circle_quadrature",
    "circle_integral",
    "lisbon",
    "lisbon_F",
    "lisbon_Ftilde",
    "lisbon_Phi",
    "lisbon_F_log",
    "sigma_partial",
]

CDTYPE = np.clongdouble
_TWO_PI = 8 * np.arctan(np.longdouble(1))
# rounding floor: successive estimates cannot agree better than this many ulps
# of the largest summand, whatever tol asks for
_FLOOR_ULPS = 64


def _is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True)
class QuadratureSpec:
    tol: float = 1e-12
    m_start: int = 64
    m_cap: int = 2**20

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not (_is_pow2(self.m_start) and _is_pow2(self.m_cap)):
            raise ValueError("m_start and m_cap must be powers of two")
        if self.m_start > self.m_cap:
            raise ValueError("m_start must not exceed m_cap")


DEFAULT_SPEC = QuadratureSpec()
# Cauchy-formula derivatives integrate an entire function of one variable on a
# small circle; 16 nodes is usually already converged.
DERIVATIVE_SPEC = QuadratureSpec(tol=1e-11, m_start=16, m_cap=4096)


@dataclass(frozen=True)
class QuadratureResult:
    value: object  # clongdouble scalar or array
    nodes: int


def _nodes(M: int, start: int, step: int) -> np.ndarray:
    j = np.arange(start, M, step, dtype=np.longdouble)
    return np.exp(CDTYPE(1j) * (_TWO_PI * j / M))


def circle_quadrature(
    g: Callable, R: float, spec: QuadratureSpec = DEFAULT_SPEC, center=0
) -> QuadratureResult:
    """(1/2 i pi) times the integral of g over |zeta - center| = R.

    Trapezoid rule on M equispaced nodes, doubling M from spec.m_start and
    reusing previous nodes, until two successive estimates differ by less than
    tol * (1 + |estimate|).  g takes an array of nodes and returns an array of
    the same length, or of shape (M, d) for vector integrands.
    """
    c = CDTYPE(center)
    R = np.longdouble(R)

    def batch(M, start, step):
        w = R * _nodes(M, start, step)
        vals = np.asarray(g(c + w))
        if vals.ndim > 1:
            w = w.reshape((-1,) + (1,) * (vals.ndim - 1))
        terms = vals * w
        return terms.sum(axis=0), np.max(np.abs(terms))

    M = spec.m_start
    total, scale = batch(M, 0, 1)
    est = total / M
    while True:
        M2 = 2 * M
        if M2 > spec.m_cap:
            raise QuadratureNoConvergence(
                f"no convergence with {M} nodes (R={float(R):.3g}, tol={spec.tol})"
            )
        part, sc = batch(M2, 1, 2)
        scale = max(scale, sc)
        total = total + part
        est2 = total / M2
        diff = np.max(np.abs(est2 - est))
        eps = np.finfo(np.asarray(est2).real.dtype).eps
        if diff < spec.tol * (1 + np.max(np.abs(est2))) or diff <= _FLOOR_ULPS * eps * scale:
            return QuadratureResult(est2, M2)
        M, est = M2, est2


def circle_integral(g: Callable, R: float, spec: QuadratureSpec = DEFAULT_SPEC, center=0):
    res = circle_quadrature(g, R, spec, center)
    v = np.asarray(res.value)
    return complex(v) if v.ndim == 0 else v.astype(complex)


# --------------------------------------------------------------------------
# Lisbon integrals
# --------------------------------------------------------------------------


def _integrand(kind: str, f: EntireFn, sigma: SigmaPoint):
    k = sigma.k
    if kind == "F":
        def g(z):
            p, dp = p_values(sigma, z, derivative=True)
            return f(z) * dp / p
    elif kind == "Ftilde":
        def g(z):
            return f(z) / p_values(sigma, z)
    elif kind == "Phi":
        powers = np.arange(k)

        def g(z):
            base = f(z) / p_values(sigma, z)
            return base[:, None] * z[:, None] ** powers[None, :]
    elif kind == "F_log":
        df = f.derivative()

        def g(z):
            return -df(z) * np.log(p_values(sigma, z) / z**k)
    else:
        raise ValueError(f"unknown Lisbon integral kind {kind!r}")
    return g


def lisbon(kind: str, f: EntireFn, sigma, spec: QuadratureSpec = DEFAULT_SPEC) -> QuadratureResult:
    """Extended-precision value and node count of one Lisbon integral."""
    sigma = _as_point(sigma)
    res = circle_quadrature(_integrand(kind, f, sigma), radius_bound(sigma), spec)
    if kind == "F_log":
        res = QuadratureResult(res.value + sigma.k * CDTYPE(f.at_zero()), res.nodes)
    return res


def lisbon_F(f: EntireFn, sigma, spec: QuadratureSpec = DEFAULT_SPEC, extended: bool = False):
    """(1/2 i pi) int f P'/P: the sum of f over the roots."""
    v = lisbon("F", f, sigma, spec).value
    return v if extended else complex(v)


def lisbon_Ftilde(f: EntireFn, sigma, spec: QuadratureSpec = DEFAULT_SPEC, extended: bool = False):
    v = lisbon("Ftilde", f, sigma, spec).value
    return v if extended else complex(v)


def lisbon_Phi(
    f: EntireFn, sigma, spec: QuadratureSpec = DEFAULT_SPEC, extended: bool = False
) -> np.ndarray:
    """(phi_0, ..., phi_{k-1}) with phi_h = (1/2 i pi) int f zeta^h / P."""
    v = np.asarray(lisbon("Phi", f, sigma, spec).value)
    return v if extended else v.astype(complex)


def lisbon_F_log(f: EntireFn, sigma, spec: QuadratureSpec = DEFAULT_SPEC, extended: bool = False):
    """-(1/2 i pi) int f' Log(P/zeta^k) + k f(0); equals lisbon_F."""
    v = lisbon("F_log", f, sigma, spec).value
    return v if extended else complex(v)


# --------------------------------------------------------------------------
# derivatives in sigma
# --------------------------------------------------------------------------


def _stack(values):
    arr = [np.asarray(v) for v in values]
    if arr[0].ndim == 0:
        return np.array([complex(v) for v in arr], dtype=complex)
    return np.stack([v.astype(complex) for v in arr])


def sigma_partial(
    Fn: Callable,
    sigma,
    h: int,
    q: int | None = None,
    spec: QuadratureSpec = DERIVATIVE_SPEC,
):
    """d_h Fn (or d_h d_q Fn) at sigma by Cauchy's integral formula.

    The circle around sigma_h has radius 0.1 (1 + |sigma_h|).  Mixed second
    derivatives nest two such integrals; the pure second derivative d_h^2 uses
    the order-two Cauchy kernel 2 / (t - sigma_h)^3 on a single circle.
    Fn may return a scalar or a vector.
    """
    sigma = _as_point(sigma)
    k = sigma.k
    for idx in (h, q):
        if idx is not None and not 1 <= idx <= k:
            raise IndexError(f"derivative index {idx} outside [1, {k}]")

    def cauchy(fun, c, order):
        r = 0.1 * (1 + abs(c))

        def g(t):
            vals = _stack([fun(complex(ti)) for ti in t])
            d = (t.astype(complex) - c) ** (order + 1)
            return vals / (d if vals.ndim == 1 else d[:, None])

        res = circle_integral(g, r, spec, center=c)
        return res * (2 if order == 2 else 1)

    if q is None:
        return cauchy(lambda t: Fn(sigma.with_slot(h, t)), sigma.values[h - 1], 1)
    if q == h:
        return cauchy(lambda t: Fn(sigma.with_slot(h, t)), sigma.values[h - 1], 2)

    def inner(tq):
        s2 = sigma.with_slot(q, tq)
        return cauchy(lambda t: Fn(s2.with_slot(h, t)), s2.values[h - 1], 1)

    return cauchy(inner, sigma.values[q - 1], 1)
