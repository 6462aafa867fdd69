"""Closed family of entire test functions: finite sums p_a(z) exp(a z).

The a = 0 part is an ordinary polynomial and keeps exact Gaussian-rational
coefficients, so polynomial inputs can be traced symbolically.  Parts with
a != 0 carry complex floats.  The family is closed under d/dz, under
multiplication by z^n, and under taking the primitive vanishing at 0.
"""
from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from .exactpoly import ZERO, GaussianRational, as_coeff

CDTYPE = np.clongdouble


def _trim(coeffs: Sequence) -> tuple:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def _to_ld(c) -> np.clongdouble:
    if isinstance(c, GaussianRational):
        re = np.longdouble(c.re.numerator) / np.longdouble(c.re.denominator)
        im = np.longdouble(c.im.numerator) / np.longdouble(c.im.denominator)
        return CDTYPE(re) + CDTYPE(1j) * CDTYPE(im)
    return CDTYPE(c)


class EntireFn:
    """f(z) = sum_a p_a(z) e^(a z); polynomial coefficients in ascending order."""

    __slots__ = ("parts",)

    def __init__(self, parts: Mapping[complex, Sequence]):
        clean = {}
        for a, coeffs in parts.items():
            a = complex(a)
            if a == 0:
                coeffs = _trim(as_coeff(c) for c in coeffs)
            else:
                coeffs = _trim(complex(c) for c in coeffs)
            if coeffs:
                clean[a] = coeffs
        object.__setattr__(self, "parts", clean)

    def __setattr__(self, name, value):
        raise AttributeError("EntireFn is immutable")

    # constructors ---------------------------------------------------------

    @classmethod
    def poly(cls, coeffs: Sequence) -> "EntireFn":
        """sum c_n z^n with coeffs = (c_0, c_1, ...)."""
        return cls({0j: coeffs})

    @classmethod
    def monomial(cls, n: int, c=1) -> "EntireFn":
        return cls.poly([0] * n + [c])

    @classmethod
    def exp(cls, a: complex = 1) -> "EntireFn":
        a = complex(a)
        if a == 0:
            return cls.poly([1])
        return cls({a: [1]})

    @classmethod
    def parse(cls, spec: str) -> "EntireFn":
        """'poly:c0,c1,...' (Gaussian rationals) or 'exp:a' (complex)."""
        from .polyroots import parse_complex

        kind, _, body = spec.partition(":")
        kind = kind.strip().lower()
        if kind == "poly":
            return cls.poly([GaussianRational.parse(x) for x in body.split(",")])
        if kind == "exp":
            return cls.exp(parse_complex(body) if body.strip() else 1)
        raise ValueError(f"unknown function spec {spec!r}; use poly:... or exp:a")

    # structure ------------------------------------------------------------

    @property
    def is_polynomial(self) -> bool:
        return all(a == 0 for a in self.parts)

    def poly_coeffs(self) -> tuple:
        """Exact coefficients of the polynomial part (ascending)."""
        return self.parts.get(0j, ())

    def degree(self) -> int:
        if not self.is_polynomial:
            raise ValueError("not a polynomial")
        return len(self.poly_coeffs()) - 1

    def __add__(self, other: "EntireFn") -> "EntireFn":
        if not isinstance(other, EntireFn):
            return NotImplemented
        parts = {a: list(c) for a, c in self.parts.items()}
        for a, coeffs in other.parts.items():
            cur = parts.setdefault(a, [])
            zero = ZERO if a == 0 else 0j
            cur.extend([zero] * (len(coeffs) - len(cur)))
            for i, c in enumerate(coeffs):
                cur[i] = cur[i] + c
        return EntireFn(parts)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "EntireFn":
        """Multiply by a scalar; exact scalars keep the polynomial part exact."""
        try:
            cx = as_coeff(c)
        except TypeError:
            cx = None
        parts = {}
        for a, coeffs in self.parts.items():
            if a == 0:
                if cx is None:
                    parts[a] = [GaussianRational.from_complex(complex(v) * complex(c)) for v in coeffs]
                else:
                    parts[a] = [v * cx for v in coeffs]
            else:
                parts[a] = [v * complex(c) for v in coeffs]
        return EntireFn(parts)

    def __mul__(self, other):
        if not isinstance(other, EntireFn):
            return self.scale(other)
        parts: dict = {}
        for a1, c1 in self.parts.items():
            for a2, c2 in other.parts.items():
                a = a1 + a2
                exact = a == 0 and a1 == 0
                prod = [ZERO if exact else 0j] * (len(c1) + len(c2) - 1)
                for i, x in enumerate(c1):
                    for j, y in enumerate(c2):
                        if exact:
                            prod[i + j] = prod[i + j] + x * y
                        else:
                            prod[i + j] = prod[i + j] + complex(x) * complex(y)
                if a == 0 and not exact:
                    prod = [GaussianRational.from_complex(v) for v in prod]
                prev = parts.get(a)
                if prev is None:
                    parts[a] = prod
                else:
                    n = max(len(prev), len(prod))
                    zero = ZERO if a == 0 else 0j
                    prev = list(prev) + [zero] * (n - len(prev))
                    parts[a] = [prev[i] + (prod[i] if i < len(prod) else zero) for i in range(n)]
        return EntireFn(parts)

    __rmul__ = __mul__

    def mul_z(self, n: int = 1) -> "EntireFn":
        """z^n f(z)."""
        parts = {}
        for a, coeffs in self.parts.items():
            zero = ZERO if a == 0 else 0j
            parts[a] = [zero] * n + list(coeffs)
        return EntireFn(parts)

    def derivative(self) -> "EntireFn":
        parts = {}
        for a, coeffs in self.parts.items():
            dp = [coeffs[i] * i for i in range(1, len(coeffs))]
            if a == 0:
                parts[a] = dp
            else:
                n = len(coeffs)
                parts[a] = [
                    a * coeffs[i] + (dp[i] if i < len(dp) else 0) for i in range(n)
                ]
        return EntireFn(parts)

    def antiderivative(self) -> "EntireFn":
        """The primitive g with g(0) = 0."""
        poly = list(self.parts.get(0j, ()))
        integ = [ZERO] + [c / (i + 1) for i, c in enumerate(poly)]
        parts = {0j: integ}
        const = 0j
        for a, coeffs in self.parts.items():
            if a == 0:
                continue
            # q' + a q = p  =>  q = sum_i (-1)^i p^(i) / a^(i+1)
            q = [0j] * len(coeffs)
            deriv = list(coeffs)
            sign_pow = 1 / a
            while deriv:
                for i, c in enumerate(deriv):
                    q[i] += sign_pow * c
                deriv = [deriv[i] * i for i in range(1, len(deriv))]
                sign_pow *= -1 / a
            parts[a] = q
            const += q[0]
        if const:
            if len(integ) == 0:
                integ = [ZERO]
            integ[0] = integ[0] - GaussianRational.from_complex(const)
            parts[0j] = integ
        return EntireFn(parts)

    # evaluation -----------------------------------------------------------

    def __call__(self, z):
        """Evaluate on an array in extended precision."""
        z = np.asarray(z, dtype=CDTYPE)
        out = np.zeros(z.shape, dtype=CDTYPE)
        for a, coeffs in self.parts.items():
            acc = np.zeros(z.shape, dtype=CDTYPE)
            for c in reversed(coeffs):
                acc = acc * z + _to_ld(c)
            if a != 0:
                acc = acc * np.exp(CDTYPE(a) * z)
            out = out + acc
        return out

    def value(self, z: complex) -> complex:
        return complex(self(np.asarray(z, dtype=CDTYPE)))

    def at_zero(self) -> complex:
        return complex(sum(_to_ld(c[0]) for c in self.parts.values()))

    def __eq__(self, other):
        return isinstance(other, EntireFn) and self.parts == other.parts

    def __hash__(self):
        return hash(tuple(sorted(((a.real, a.imag), c) for a, c in self.parts.items())))

    def __repr__(self):
        return f"EntireFn({self})"

    def __str__(self):
        chunks = []
        for a, coeffs in sorted(self.parts.items(), key=lambda t: (t[0].real, t[0].imag)):
            poly = " + ".join(
                f"{c}*z^{i}" if i else f"{c}" for i, c in enumerate(coeffs) if c
            )
            chunks.append(f"({poly})" if a == 0 else f"({poly})*exp({a}*z)")
        return " + ".join(chunks) or "0"
