"""The monic polynomial P_sigma, its roots, and the companion matrix.

P_sigma(z) = sum_{h=0}^k (-1)^h sigma_h z^(k-h), with sigma_0 = 1.

Numeric work is done in numpy's extended precision (clongdouble): trace sums
of z^8 over roots of size ~6 need about 1e-16 relative accuracy to land
within 1e-9 absolute, which double precision does not leave room for.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateRoots, NoConvergence
from .exactpoly import SigmaPoly
from .report import Report

__all__ = [
    "SigmaPoint",
    "SymbolicMatrix",
    "p_eval",
    "p_values",
    "roots",
    "simple_roots",
    "discriminant",
    "radius_bound",
    "companion",
    "companion_symbolic",
    "gamma_power",
    "reduce_power",
    "companion_derivative_identity_check",
    "calcul_matriciel_check",
]

CDTYPE = np.clongdouble
DK_MAX_ITER = 500
DK_STOP = 1e-13
SIMPLE_ROOT_GUARD = 1e-8


@dataclass(frozen=True)
class SigmaPoint:
    """A point (sigma_1, ..., sigma_k) of C^k."""

    values: tuple

    def __init__(self, values: Sequence):
        vals = tuple(complex(v) for v in values)
        if not vals:
            raise ValueError("a SigmaPoint needs k >= 1 coordinates")
        if not all(np.isfinite(v.real) and np.isfinite(v.imag) for v in vals):
            raise ValueError(f"non-finite coordinate in {vals}")
        object.__setattr__(self, "values", vals)

    @property
    def k(self) -> int:
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, h):
        return self.values[h]

    def sigma(self, h: int) -> complex:
        """sigma_h with sigma_0 = 1."""
        return 1 + 0j if h == 0 else self.values[h - 1]

    def with_slot(self, h: int, t: complex) -> "SigmaPoint":
        vals = list(self.values)
        vals[h - 1] = t
        return SigmaPoint(vals)

    def coeffs(self) -> np.ndarray:
        """Coefficients of P_sigma, highest degree first, in extended precision."""
        c = np.empty(self.k + 1, dtype=CDTYPE)
        c[0] = 1
        for h in range(1, self.k + 1):
            c[h] = (-1) ** h * CDTYPE(self.values[h - 1])
        return c

    def norm(self) -> float:
        return max(abs(v) for v in self.values)

    def __str__(self):
        return ",".join(fmt_complex(v) for v in self.values)

    @classmethod
    def parse(cls, text: str) -> "SigmaPoint":
        return cls([parse_complex(x) for x in text.split(",")])


def parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "").replace("i", "j")
    if s.endswith("j") and s[:-1] in ("", "+", "-"):
        s = s[:-1] + "1j"
    return complex(s)


def fmt_complex(z: complex) -> str:
    z = complex(z)
    re, im = z.real + 0.0, z.imag + 0.0
    if im == 0:
        return repr(re).removesuffix(".0") if re.is_integer() else repr(re)

    def num(x):
        return repr(x).removesuffix(".0") if x.is_integer() else repr(x)

    if re == 0:
        return f"{num(im)}i"
    return f"{num(re)}{'+' if im >= 0 else '-'}{num(abs(im))}i"


def _as_point(sigma) -> SigmaPoint:
    return sigma if isinstance(sigma, SigmaPoint) else SigmaPoint(sigma)


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------


def p_values(sigma: SigmaPoint, z, derivative: bool = False):
    """Horner evaluation of P_sigma (and optionally P') on an array, extended precision."""
    z = np.asarray(z, dtype=CDTYPE)
    c = sigma.coeffs()
    p = np.full(z.shape, c[0], dtype=CDTYPE)
    dp = np.zeros(z.shape, dtype=CDTYPE)
    for a in c[1:]:
        if derivative:
            dp = dp * z + p
        p = p * z + a
    return (p, dp) if derivative else p


def p_eval(sigma, z: complex, order: int = 0) -> complex:
    sigma = _as_point(sigma)
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1")
    p, dp = p_values(sigma, CDTYPE(z), derivative=True)
    return complex(dp if order else p)


def radius_bound(sigma) -> float:
    """Smallest 2^m (1 + max|sigma_h|), m >= 1, with sum |sigma_h| R^-h <= 1/2.

    Then every root has |z| < R and |P(zeta)/zeta^k - 1| <= 1/2 on |zeta| = R.
    """
    sigma = _as_point(sigma)
    mags = [abs(v) for v in sigma.values]
    R = 2.0 * (1.0 + max(mags))
    while sum(m * R ** -(h + 1) for h, m in enumerate(mags)) > 0.5:
        R *= 2.0
    return R


def _roots_ld(sigma: SigmaPoint) -> np.ndarray:
    k = sigma.k
    R = radius_bound(sigma)
    c = sigma.coeffs()
    if k == 1:
        return np.array([-c[1]], dtype=CDTYPE)
    z = CDTYPE(R) * CDTYPE(0.4 + 0.9j) ** np.arange(k)
    eye = np.eye(k, dtype=bool)
    for _ in range(DK_MAX_ITER):
        p = np.polyval(c, z)
        diff = z[:, None] - z[None, :]
        diff[eye] = 1
        denom = diff.prod(axis=1)
        if np.any(denom == 0):
            # coincident iterates: nudge and carry on
            z = z + CDTYPE(1e-12 * R) * np.exp(1j * np.arange(k, dtype=np.longdouble))
            continue
        step = p / denom
        z = z - step
        if np.max(np.abs(step)) < DK_STOP * R:
            return z
    raise NoConvergence(f"Durand-Kerner did not converge in {DK_MAX_ITER} iterations")


def _sorted(z: np.ndarray) -> np.ndarray:
    order = np.lexsort((z.imag.astype(float), z.real.astype(float)))
    return z[order]


def roots_ld(sigma, tol: float = 1e-10) -> np.ndarray:
    """Roots in extended precision, sorted by real then imaginary part."""
    sigma = _as_point(sigma)
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = _sorted(_roots_ld(sigma))
    R = radius_bound(sigma)
    resid = np.abs(p_values(sigma, z))
    if np.any(resid > tol * max(1.0, R) ** sigma.k):
        raise NoConvergence(f"root residual {float(resid.max()):.3g} above tolerance")
    return z


def roots(sigma, tol: float = 1e-10) -> np.ndarray:
    """The k roots of P_sigma as complex128, sorted by (real, imag)."""
    return roots_ld(sigma, tol).astype(complex)


def simple_roots(sigma, tol: float = 1e-10) -> np.ndarray:
    """Roots, after checking they are pairwise separated by > 1e-8 R."""
    sigma = _as_point(sigma)
    z = roots_ld(sigma, tol)
    if sigma.k > 1:
        d = np.abs(z[:, None] - z[None, :])
        d[np.eye(sigma.k, dtype=bool)] = np.inf
        if d.min() <= SIMPLE_ROOT_GUARD * radius_bound(sigma):
            raise DegenerateRoots(
                f"minimum root separation {float(d.min()):.3g} at sigma=({sigma})"
            )
    return z


def discriminant(sigma) -> complex:
    z = roots_ld(_as_point(sigma))
    k = len(z)
    out = CDTYPE(1)
    for i in range(k):
        for j in range(i + 1, k):
            out *= (z[i] - z[j]) ** 2
    return complex(out)


def min_root_separation(sigma) -> float:
    z = roots_ld(_as_point(sigma))
    if len(z) < 2:
        return float("inf")
    d = np.abs(z[:, None] - z[None, :])
    d[np.eye(len(z), dtype=bool)] = np.inf
    return float(d.min())


# --------------------------------------------------------------------------
# companion matrices
# --------------------------------------------------------------------------


def companion(sigma) -> np.ndarray:
    """Numeric A: ones on the superdiagonal, last row (st_k, ..., st_1).

    st_h = (-1)^(h-1) sigma_h.  Acting on E(z) = (1, z, ..., z^(k-1)) this
    gives A E(z) = z E(z) - P_sigma(z) V with V the last basis vector.
    """
    sigma = _as_point(sigma)
    k = sigma.k
    A = np.zeros((k, k), dtype=complex)
    for i in range(k - 1):
        A[i, i + 1] = 1
    for col in range(k):
        h = k - col
        A[k - 1, col] = (-1) ** (h - 1) * sigma.values[h - 1]
    return A


class SymbolicMatrix:
    """Small dense matrix of SigmaPoly entries."""

    __slots__ = ("k", "rows")

    def __init__(self, rows: Sequence[Sequence[SigmaPoly]]):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("square matrix expected")
        ks = {e.k for r in rows for e in r}
        if len(ks) != 1:
            raise ValueError("entries must share k")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "k", ks.pop())

    def __setattr__(self, name, value):
        raise AttributeError("SymbolicMatrix is immutable")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int, k: int) -> "SymbolicMatrix":
        return cls(
            [[SigmaPoly.constant(k, 1 if i == j else 0) for j in range(n)] for i in range(n)]
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def T(self) -> "SymbolicMatrix":
        return SymbolicMatrix([self.col(j) for j in range(self.n)])

    def __matmul__(self, other):
        if isinstance(other, SymbolicMatrix):
            cols = [other.col(j) for j in range(other.n)]
            return SymbolicMatrix(
                [[_dot(r, c) for c in cols] for r in self.rows]
            )
        return tuple(_dot(r, other) for r in self.rows)

    def __add__(self, other):
        return SymbolicMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def __neg__(self):
        return SymbolicMatrix([[-a for a in r] for r in self.rows])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymbolicMatrix":
        return SymbolicMatrix([[a.scale(c) for a in r] for r in self.rows])

    def __pow__(self, n: int):
        out = SymbolicMatrix.identity(self.n, self.k)
        for _ in range(n):
            out = out @ self
        return out

    def partial(self, h: int) -> "SymbolicMatrix":
        return SymbolicMatrix([[a.partial(h) for a in r] for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, SymbolicMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def evaluate(self, sigma) -> np.ndarray:
        return np.array([[a.evaluate(sigma) for a in r] for r in self.rows], dtype=complex)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(a) for a in r) for r in self.rows) + "]"

    __repr__ = __str__


def _dot(row, col) -> SigmaPoly:
    acc = None
    for a, b in zip(row, col):
        if a and b:
            acc = a * b if acc is None else acc + a * b
    if acc is None:
        return SigmaPoly.zero(row[0].k)
    return acc


def companion_symbolic(k: int) -> SymbolicMatrix:
    rows = []
    for i in range(k - 1):
        rows.append([SigmaPoly.constant(k, 1 if j == i + 1 else 0) for j in range(k)])
    rows.append(
        [SigmaPoly.var(k, k - col).scale((-1) ** (k - col - 1)) for col in range(k)]
    )
    return SymbolicMatrix(rows)


def reduce_power(k: int, n: int) -> tuple:
    """Coefficients (a_{n,0}, ..., a_{n,k-1}) of z^n mod P_sigma, as SigmaPolys.

    Uses z^k = sum_{h=1}^k (-1)^(h-1) sigma_h z^(k-h) repeatedly; this is
    independent of the companion-matrix route.
    """
    return _reduce_power(k, n)


_REDUCE_CACHE: dict = {}


def _reduce_power(k: int, n: int) -> tuple:
    key = (k, n)
    hit = _REDUCE_CACHE.get(key)
    if hit is not None:
        return hit
    if n < k:
        out = tuple(SigmaPoly.constant(k, 1 if b == n else 0) for b in range(k))
    else:
        prev = _reduce_power(k, n - 1)
        # multiply by z: shift up, then fold z^k back in
        top = prev[k - 1]
        shifted = [SigmaPoly.zero(k)] + list(prev[: k - 1])
        out = tuple(
            shifted[b] + top * SigmaPoly.var(k, k - b).scale((-1) ** (k - b - 1))
            for b in range(k)
        )
    _REDUCE_CACHE[key] = out
    return out


def gamma_power(k: int, j: int) -> SymbolicMatrix:
    """Matrix of multiplication by z^j on C[sigma][z]/(P), basis 1, z, ..., z^(k-1).

    Column v holds the coefficients of z^(v+j); this is the transpose of A^j.
    """
    if j < 0:
        raise ValueError("j must be >= 0")
    cols = [_reduce_power(k, v + j) for v in range(k)]
    return SymbolicMatrix([[cols[v][u] for v in range(k)] for u in range(k)])


def companion_derivative_identity_check(k: int) -> Report:
    """(-1)^(k+h) d_h(A) = (d_k A) A^(k-h) for every h in [1, k-1], exactly."""
    if k < 2:
        raise ValueError("k >= 2 required")
    A = companion_symbolic(k)
    dA_k = A.partial(k)
    per_h = {}
    for h in range(1, k):
        lhs = A.partial(h).scale((-1) ** (k + h))
        rhs = dA_k @ (A ** (k - h))
        per_h[h] = lhs == rhs
    ok = all(per_h.values())
    return Report(
        check="companion_derivative_identity",
        params={"k": k, "per_h": {str(h): v for h, v in per_h.items()}, "tol": 0},
        residual=0.0 if ok else 1.0,
        passed=ok,
    )


def calcul_matriciel_check(k: int) -> Report:
    """Line (k-q) of A^(k-p) equals line (k-p) of A^(k-q), all p, q in [1, k].

    Lines are 0-based and refer to A^j; in terms of gamma_power they are the
    columns of Gamma_j, i.e. both sides are the coefficients of z^(2k-p-q).
    """
    A = companion_symbolic(k)
    powers = {j: A**j for j in range(0, k)}
    bad = []
    for p in range(1, k + 1):
        for q in range(1, k + 1):
            if powers[k - p].row(k - q) != powers[k - q].row(k - p):
                bad.append((p, q))
            if gamma_power(k, k - p).col(k - q) != powers[k - p].row(k - q):
                bad.append((p, q, "gamma"))
    return Report(
        check="calcul_matriciel",
        params={"k": k, "failures": [list(map(str, b)) for b in bad], "tol": 0},
        residual=float(len(bad)),
        passed=not bad,
    )
