"""Exact polynomials in sigma_1..sigma_k over the Gaussian rationals.

The weight of a monomial sigma^gamma is sum(h * gamma_h); all the objects
that show up downstream (power sums, derived Newton polynomials, kernels of
the operator systems) are graded by it.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import IndexOutOfRange, MismatchedArity

__all__ = [
    "GaussianRational",
    "SigmaPoly",
    "as_coeff",
    "poly_arith",
    "partial",
    "weight_decompose",
    "monomial_basis",
    "monomial_weight",
    "eval_poly",
    "partitions_count",
]


class GaussianRational:
    """Exact element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def from_complex(cls, z: complex) -> "GaussianRational":
        """Exact binary value of a float pair; no rounding happens here."""
        z = complex(z)
        return cls(Fraction(z.real), Fraction(z.imag))

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        s = text.strip().replace(" ", "")
        while s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        if not s:
            raise ValueError(f"empty coefficient in {text!r}")
        if not s.endswith("i"):
            return cls(_parse_rational(s))
        body = s[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut > 0 and body[cut - 1] not in "eE":
            re_part, im_part = body[:cut], body[cut:]
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+"):
            im_val = Fraction(1)
        elif im_part == "-":
            im_val = Fraction(-1)
        else:
            im_val = _parse_rational(im_part)
        return cls(_parse_rational(re_part), im_val)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return GaussianRational._raw(self.re * o.re, _ZERO)
        return GaussianRational._raw(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero Gaussian rational")
        if not o.im:
            return GaussianRational._raw(self.re / o.re, self.im / o.re)
        n = o.re * o.re + o.im * o.im
        return GaussianRational._raw(
            (self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n
        )

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / (self ** (-n))
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if self.im == 1:
            im = "i"
        elif self.im == -1:
            im = "-i"
        else:
            im = f"{self.im}i"
        if not self.re:
            return im
        sign = "" if im.startswith("-") else "+"
        return f"{self.re}{sign}{im}"


_ZERO = Fraction(0)
ONE = GaussianRational(1)
ZERO = GaussianRational(0)


def _parse_rational(s: str) -> Fraction:
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        raise ValueError(f"not a rational literal: {s!r}")
    return Fraction(s)


def _coerce_or_none(x):
    if type(x) is GaussianRational:
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return GaussianRational._raw(Fraction(x), _ZERO)
    return None


def as_coeff(x) -> GaussianRational:
    """Coerce ints, Fractions and Gaussian rationals; floats are refused."""
    c = _coerce_or_none(x)
    if c is None:
        if isinstance(x, str):
            return GaussianRational.parse(x)
        raise TypeError(f"exact coefficient expected, got {type(x).__name__}")
    return c


# --------------------------------------------------------------------------
# monomials and weights
# --------------------------------------------------------------------------

Exponent = tuple  # tuple[int, ...] of length k


def monomial_weight(gamma: Sequence[int]) -> int:
    return sum((h + 1) * g for h, g in enumerate(gamma))


def _grlex_key(gamma: Sequence[int]):
    return (sum(gamma), tuple(gamma))


@lru_cache(maxsize=None)
def _weight_exponents(k: int, w: int) -> tuple:
    out = []

    def rec(h, remaining, acc):
        # h runs from k down to 1 so that the weight budget is split greedily
        if h == 0:
            if remaining == 0:
                out.append(tuple(reversed(acc)))
            return
        for e in range(remaining // h + 1):
            rec(h - 1, remaining - e * h, acc + [e])

    rec(k, w, [])
    return tuple(sorted(out))


def partitions_count(w: int, max_part: int) -> int:
    """Number of partitions of w into parts <= max_part (dynamic programming)."""
    ways = [1] + [0] * w
    for part in range(1, max_part + 1):
        for total in range(part, w + 1):
            ways[total] += ways[total - part]
    return ways[w]


# --------------------------------------------------------------------------
# SigmaPoly
# --------------------------------------------------------------------------


class SigmaPoly:
    """Sparse exact polynomial: exponent tuple -> nonzero GaussianRational."""

    __slots__ = ("k", "_terms", "_hash")

    def __init__(self, k: int, terms: Mapping[Sequence[int], object] | None = None):
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"k must be a positive integer, got {k!r}")
        clean = {}
        for gamma, c in (terms or {}).items():
            gamma = tuple(int(e) for e in gamma)
            if len(gamma) != k or any(e < 0 for e in gamma):
                raise ValueError(f"bad exponent {gamma} for k={k}")
            c = as_coeff(c)
            if c:
                prev = clean.get(gamma)
                c = c if prev is None else prev + c
                if c:
                    clean[gamma] = c
                else:
                    del clean[gamma]
        self._set(k, clean)

    def _set(self, k, terms):
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "_terms", terms)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("SigmaPoly is immutable")

    @classmethod
    def _make(cls, k: int, terms: dict) -> "SigmaPoly":
        obj = object.__new__(cls)
        obj._set(k, terms)
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, k: int) -> "SigmaPoly":
        return cls._make(k, {})

    @classmethod
    def constant(cls, k: int, c=1) -> "SigmaPoly":
        c = as_coeff(c)
        return cls._make(k, {(0,) * k: c} if c else {})

    @classmethod
    def var(cls, k: int, h: int) -> "SigmaPoly":
        """sigma_h, 1-based."""
        if not 1 <= h <= k:
            raise IndexOutOfRange(f"variable index {h} outside [1, {k}]")
        gamma = [0] * k
        gamma[h - 1] = 1
        return cls._make(k, {tuple(gamma): ONE})

    @classmethod
    def monomial(cls, gamma: Sequence[int], c=1) -> "SigmaPoly":
        gamma = tuple(gamma)
        return cls(len(gamma), {gamma: c})

    # access ---------------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator:
        """Terms in graded-lex order (highest first)."""
        for gamma in sorted(self._terms, key=_grlex_key, reverse=True):
            yield gamma, self._terms[gamma]

    def coeff(self, gamma: Sequence[int]) -> GaussianRational:
        return self._terms.get(tuple(gamma), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(g) for g in self._terms)

    def constant_term(self) -> GaussianRational:
        return self._terms.get((0,) * self.k, ZERO)

    def degree_in(self, h: int) -> int:
        """Degree in sigma_h; -1 for the zero polynomial."""
        return max((g[h - 1] for g in self._terms), default=-1)

    def weights(self) -> set:
        return {monomial_weight(g) for g in self._terms}

    def pure_weight(self) -> int | None:
        ws = self.weights()
        return ws.pop() if len(ws) == 1 else None

    def is_real(self) -> bool:
        return all(c.is_real for c in self._terms.values())

    # arithmetic -----------------------------------------------------------

    def _check(self, other: "SigmaPoly"):
        if other.k != self.k:
            raise MismatchedArity(f"k={self.k} vs k={other.k}")

    def _lift(self, other):
        if isinstance(other, SigmaPoly):
            self._check(other)
            return other
        c = _coerce_or_none(other)
        if c is None:
            return None
        return SigmaPoly.constant(self.k, c)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for g, c in o._terms.items():
            s = out.get(g)
            if s is None:
                out[g] = c
            else:
                s = s + c
                if s:
                    out[g] = s
                else:
                    del out[g]
        return SigmaPoly._make(self.k, out)

    __radd__ = __add__

    def __neg__(self):
        return SigmaPoly._make(self.k, {g: -c for g, c in self._terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def scale(self, c) -> "SigmaPoly":
        c = as_coeff(c)
        if not c:
            return SigmaPoly.zero(self.k)
        return SigmaPoly._make(self.k, {g: v * c for g, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SigmaPoly):
            c = _coerce_or_none(other)
            if c is None:
                return NotImplemented
            return self.scale(c)
        self._check(other)
        out: dict = {}
        for g1, c1 in self._terms.items():
            for g2, c2 in other._terms.items():
                g = tuple(a + b for a, b in zip(g1, g2))
                s = out.get(g)
                out[g] = c1 * c2 if s is None else s + c1 * c2
        return SigmaPoly._make(self.k, {g: c for g, c in out.items() if c})

    def __rmul__(self, other):
        c = _coerce_or_none(other)
        if c is None:
            return NotImplemented
        return self.scale(c)

    def __truediv__(self, other):
        c = _coerce_or_none(other)
        if c is None:
            return NotImplemented
        return self.scale(ONE / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = SigmaPoly.constant(self.k, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, SigmaPoly):
            return self.k == other.k and self._terms == other._terms
        c = _coerce_or_none(other)
        if c is None:
            return NotImplemented
        if not c:
            return not self._terms
        return self._terms == {(0,) * self.k: c}

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.k, frozenset(self._terms.items())))
            )
        return self._hash

    # calculus -------------------------------------------------------------

    def partial(self, h: int) -> "SigmaPoly":
        if not 1 <= h <= self.k:
            raise IndexOutOfRange(f"partial index {h} outside [1, {self.k}]")
        i = h - 1
        out = {}
        for g, c in self._terms.items():
            e = g[i]
            if e:
                g2 = g[:i] + (e - 1,) + g[i + 1 :]
                out[g2] = c * e
        return SigmaPoly._make(self.k, out)

    def weight_decompose(self) -> list:
        buckets: dict = {}
        for g, c in self._terms.items():
            buckets.setdefault(monomial_weight(g), {})[g] = c
        return [(w, SigmaPoly._make(self.k, buckets[w])) for w in sorted(buckets)]

    def coefficient_in(self, h: int, e: int) -> "SigmaPoly":
        """Coefficient of sigma_h^e, as a polynomial with sigma_h set to zero."""
        i = h - 1
        out = {}
        for g, c in self._terms.items():
            if g[i] == e:
                out[g[:i] + (0,) + g[i + 1 :]] = c
        return SigmaPoly._make(self.k, out)

    def substitute_zero(self, h: int) -> "SigmaPoly":
        return self.coefficient_in(h, 0)

    def evaluate(self, sigma) -> complex:
        return eval_poly(self, sigma)

    # text -----------------------------------------------------------------

    def __str__(self):
        return render_terms(
            ((_sigma_factors(g), c) for g, c in self.items()),
        )

    def __repr__(self):
        return f"SigmaPoly(k={self.k}, {self})"

    @classmethod
    def parse(cls, text: str, k: int) -> "SigmaPoly":
        result = cls.zero(k)
        for sign, factors in parse_terms(text):
            term = cls.constant(k, sign)
            for kind, a, b in factors:
                if kind == "c":
                    term = term.scale(a)
                elif kind == "s":
                    if not 1 <= a <= k:
                        raise IndexOutOfRange(f"s{a} outside k={k}")
                    term = term * cls.var(k, a) ** b
                else:
                    raise ValueError(f"derivative factor d{a} in a polynomial")
            result = result + term
        return result


# --------------------------------------------------------------------------
# shared text rendering/parsing for polynomials and Weyl operators
# --------------------------------------------------------------------------


def _sigma_factors(gamma) -> list:
    return [f"s{h + 1}" if e == 1 else f"s{h + 1}^{e}" for h, e in enumerate(gamma) if e]


def _coeff_text(c: GaussianRational, standalone: bool) -> str:
    if c.is_real:
        return str(c.re)
    return f"({c})"


def render_terms(terms: Iterable) -> str:
    """Render (factor strings, coefficient) pairs as 'c*f1*f2 + ...'."""
    parts = []
    for factors, c in terms:
        negative = c.is_real and c.re < 0
        mag = -c if negative else c
        if not factors:
            body = _coeff_text(mag, True)
        elif mag == ONE:
            body = "*".join(factors)
        else:
            body = _coeff_text(mag, False) + "*" + "*".join(factors)
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append((" - " if negative else " + ") + body)
    return "".join(parts) if parts else "0"


_FACTOR = re.compile(r"([sd])(\d+)(?:\^(\d+))?")


def parse_terms(text: str) -> list:
    """Split canonical text into [(sign, [(kind, a, b), ...]), ...].

    kind is 'c' (coefficient a), 's' (sigma_a^b) or 'd' (partial_a^b); factor
    order is preserved so that operator products can be rebuilt left to right.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty expression")
    chunks, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start and s[start:i].strip():
            prev = s[:i].rstrip()[-1]
            if prev not in "*^/(":
                chunks.append(s[start:i])
                start = i
    chunks.append(s[start:])
    out = []
    for chunk in chunks:
        chunk = chunk.strip()
        sign = 1
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:].strip()
        if not chunk:
            raise ValueError(f"dangling sign in {text!r}")
        factors = []
        for tok in _split_factors(chunk):
            m = _FACTOR.fullmatch(tok)
            if m:
                factors.append((m.group(1), int(m.group(2)), int(m.group(3) or 1)))
            else:
                factors.append(("c", GaussianRational.parse(tok), None))
        out.append((sign, factors))
    return out


def _split_factors(chunk: str) -> list:
    toks, depth, cur = [], 0, ""
    for ch in chunk:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            toks.append(cur.strip())
            cur = ""
        else:
            cur += ch
    toks.append(cur.strip())
    if any(not t for t in toks):
        raise ValueError(f"empty factor in {chunk!r}")
    return toks


# --------------------------------------------------------------------------
# module-level operations
# --------------------------------------------------------------------------


def poly_arith(a: SigmaPoly, b: SigmaPoly, op: str) -> SigmaPoly:
    if a.k != b.k:
        raise MismatchedArity(f"k={a.k} vs k={b.k}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def partial(p: SigmaPoly, h: int) -> SigmaPoly:
    return p.partial(h)


def weight_decompose(p: SigmaPoly) -> list:
    return p.weight_decompose()


def monomial_basis(k: int, w: int) -> list:
    """All sigma^gamma of weight w, ascending lexicographic order on gamma."""
    if k < 1 or w < 0:
        raise ValueError("need k >= 1 and w >= 0")
    return [SigmaPoly._make(k, {g: ONE}) for g in _weight_exponents(k, w)]


def weight_exponents(k: int, w: int) -> tuple:
    return _weight_exponents(k, w)


def eval_poly(p: SigmaPoly, sigma) -> complex:
    values = _sigma_values(sigma)
    if len(values) != p.k:
        raise MismatchedArity(f"polynomial has k={p.k}, point has k={len(values)}")
    total = 0j
    for g in sorted(p._terms):
        term = complex(p._terms[g])
        for v, e in zip(values, g):
            if e:
                term *= v**e
        total += term
    return total


def _sigma_values(sigma) -> tuple:
    vals = getattr(sigma, "values", sigma)
    return tuple(complex(v) for v in vals)
