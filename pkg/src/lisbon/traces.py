"""Root-sum traces, Newton polynomials, and Lagrange interpolation at the roots.

trace_T(f)      = sum_j f(z_j)
trace_form(f)   = sum_j f(z_j) / P'(z_j)
vector_trace(f) = (trace_form(z^h f))_{h=0..k-1}

For polynomial f these are exact polynomials in sigma: T(z^m) is the power
sum N_m and trace_form(z^(m+k-1)) is the derived Newton polynomial DN_m.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .contour import DEFAULT_SPEC, QuadratureSpec, circle_quadrature
from .entire import EntireFn
from .exactpoly import ZERO, SigmaPoly, as_coeff
from .polyroots import CDTYPE, _as_point, p_values, radius_bound, roots_ld, simple_roots

__all__ = [
    "trace_T",
    "trace_form",
    "vector_trace",
    "newton_symbolic",
    "derived_newton_symbolic",
    "trace_poly_symbolic",
    "InterpolationPolynomial",
    "lagrange_interp",
    "quotient_eval",
    "phi_to_pi",
    "pi_to_phi",
]


def trace_T(f: EntireFn, sigma, extended: bool = False):
    """sum f(z_j) over the roots, with multiplicity."""
    z = roots_ld(_as_point(sigma))
    total = np.sum(f(z))
    return total if extended else complex(total)


def _trace_form_ld(f: EntireFn, sigma) -> np.clongdouble:
    sigma = _as_point(sigma)
    z = simple_roots(sigma)
    _, dp = p_values(sigma, z, derivative=True)
    return np.sum(f(z) / dp)


def trace_form(f: EntireFn, sigma, extended: bool = False):
    """sum f(z_j)/P'(z_j); raises DegenerateRoots near the discriminant locus."""
    total = _trace_form_ld(f, sigma)
    return total if extended else complex(total)


def vector_trace(f: EntireFn, sigma, extended: bool = False) -> np.ndarray:
    sigma = _as_point(sigma)
    z = simple_roots(sigma)
    _, dp = p_values(sigma, z, derivative=True)
    base = f(z) / dp
    out = np.array([np.sum(base * z**h) for h in range(sigma.k)], dtype=CDTYPE)
    return out if extended else out.astype(complex)


# --------------------------------------------------------------------------
# symbolic traces
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def newton_symbolic(k: int, m: int) -> SigmaPoly:
    """Power sum N_m = sum z_j^m in the elementary symmetric functions.

    Newton's identities: N_m = sum_{i=1}^{m-1} (-1)^(i-1) sigma_i N_{m-i}
    + (-1)^(m-1) m sigma_m, with sigma_i = 0 for i > k.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return SigmaPoly.constant(k, k)
    acc = SigmaPoly.zero(k)
    for i in range(1, min(m - 1, k) + 1):
        acc = acc + SigmaPoly.var(k, i).scale((-1) ** (i - 1)) * newton_symbolic(k, m - i)
    if m <= k:
        acc = acc + SigmaPoly.var(k, m).scale((-1) ** (m - 1) * m)
    return acc


@lru_cache(maxsize=None)
def derived_newton_symbolic(k: int, m: int) -> SigmaPoly:
    """DN_m = trace_form(z^(m+k-1)) as an exact polynomial.

    Expanding zeta^(m+k-1)/P(zeta) at infinity gives residue c_m where
    c_0 = 1 and c_j = -sum_{h=1}^{min(j,k)} (-1)^h sigma_h c_{j-h}.
    DN_m vanishes for m in [-k+1, -1].
    """
    if m < -k + 1:
        raise ValueError(f"DN_m needs m >= {-k + 1}")
    if m < 0:
        return SigmaPoly.zero(k)
    if m == 0:
        return SigmaPoly.constant(k, 1)
    acc = SigmaPoly.zero(k)
    for h in range(1, min(m, k) + 1):
        acc = acc - SigmaPoly.var(k, h).scale((-1) ** h) * derived_newton_symbolic(k, m - h)
    return acc


def trace_poly_symbolic(f: EntireFn, k: int, kind: str = "T") -> SigmaPoly:
    """Exact trace of a polynomial f: sum c_n N_n (T) or sum c_n DN_{n-k+1} (Ttilde)."""
    if not f.is_polynomial:
        raise ValueError("symbolic traces need a polynomial input")
    acc = SigmaPoly.zero(k)
    for n, c in enumerate(f.poly_coeffs()):
        if not c:
            continue
        if kind == "T":
            acc = acc + newton_symbolic(k, n).scale(c)
        elif kind == "Ttilde":
            if n >= k - 1:
                acc = acc + derived_newton_symbolic(k, n - k + 1).scale(c)
        else:
            raise ValueError(f"kind must be 'T' or 'Ttilde', got {kind!r}")
    return acc


def vector_trace_symbolic(f: EntireFn, k: int) -> list:
    """Exact components trace_form(z^h f), h = 0..k-1."""
    return [trace_poly_symbolic(f.mul_z(h), k, "Ttilde") for h in range(k)]


# --------------------------------------------------------------------------
# interpolation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class InterpolationPolynomial:
    """Pi(z) = sum_h coeffs[h] z^h, degree <= k-1."""

    k: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.k:
            raise ValueError(f"need exactly k={self.k} coefficients")

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


def _gamma_h(sigma, h: int, z):
    """sum_{p=0}^{k-h-1} (-1)^p sigma_p z^(k-p-h-1): coefficient of x^h in
    (P(z) - P(x)) / (z - x)."""
    k = sigma.k
    acc = np.zeros(np.shape(z), dtype=CDTYPE)
    for p in range(0, k - h):
        acc = acc + (-1) ** p * CDTYPE(sigma.sigma(p)) * z ** (k - p - h - 1)
    return acc


def lagrange_interp(
    f: EntireFn, sigma, spec: QuadratureSpec = DEFAULT_SPEC, extended: bool = False
) -> InterpolationPolynomial:
    """Remainder of f modulo P_sigma, one contour integral per coefficient."""
    sigma = _as_point(sigma)
    k = sigma.k

    def g(z):
        base = f(z) / p_values(sigma, z)
        return np.stack([base * _gamma_h(sigma, h, z) for h in range(k)], axis=1)

    vals = np.asarray(circle_quadrature(g, radius_bound(sigma), spec).value)
    return InterpolationPolynomial(k, tuple(v if extended else complex(v) for v in vals))


def quotient_eval(
    f: EntireFn, sigma, z: complex, spec: QuadratureSpec = DEFAULT_SPEC, extended: bool = False
):
    """Q_f(sigma, z) with f = Pi_f + P_sigma Q_f; needs |z| < radius_bound."""
    sigma = _as_point(sigma)
    R = radius_bound(sigma)
    if not abs(z) < R:
        raise ValueError(f"|z| = {abs(z):.3g} is not inside the contour radius {R}")
    zz = CDTYPE(z)

    def g(t):
        return f(t) / ((t - zz) * p_values(sigma, t))

    v = circle_quadrature(g, R, spec).value
    return v if extended else complex(v)


def _sigma_list(sigma) -> list:
    """[sigma_0 = 1, sigma_1, ..., sigma_k], preserving exact entries."""
    vals = getattr(sigma, "values", sigma)
    vals = list(vals)
    one = 1 if not vals or not isinstance(vals[0], complex) else 1 + 0j
    return [one] + vals


def phi_to_pi(sigma, phi: Sequence) -> InterpolationPolynomial:
    """Pi_h = sum_{p=0}^{k-h-1} (-1)^p sigma_p Phi_{k-p-h-1}.

    Works over any number type, so exact inputs give exact outputs.
    """
    s = _sigma_list(sigma)
    k = len(s) - 1
    if len(phi) != k:
        raise ValueError("Phi must have k components")
    coeffs = []
    for h in range(k):
        acc = 0
        for p in range(0, k - h):
            acc = acc + (-1) ** p * s[p] * phi[k - p - h - 1]
        coeffs.append(acc)
    return InterpolationPolynomial(k, tuple(coeffs))


def pi_to_phi(sigma, pi) -> list:
    """Inverse of phi_to_pi by back substitution (unit triangular system)."""
    s = _sigma_list(sigma)
    k = len(s) - 1
    coeffs = pi.coeffs if isinstance(pi, InterpolationPolynomial) else tuple(pi)
    if len(coeffs) != k:
        raise ValueError("Pi must have k coefficients")
    phi: list = []
    for j in range(k):
        acc = coeffs[k - 1 - j]
        for p in range(1, j + 1):
            acc = acc - (-1) ** p * s[p] * phi[j - p]
        phi.append(acc)
    return phi
