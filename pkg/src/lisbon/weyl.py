"""Polynomial-coefficient differential operators in normal order.

An operator is stored as {(alpha, beta): c} meaning sum c * sigma^alpha d^beta
with every sigma to the left of every derivative.  That form is unique, so
operator identities reduce to dictionary equality.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence

from .errors import IndexOutOfRange, MismatchedArity
from .exactpoly import (
    ONE,
    GaussianRational,
    SigmaPoly,
    _coerce_or_none,
    as_coeff,
    monomial_weight,
    parse_terms,
    render_terms,
)

__all__ = [
    "WeylOp",
    "weyl_compose",
    "commutator",
    "weyl_apply",
    "pure_weight",
    "weight_from_commutator",
    "make_generator",
    "A_op",
    "T_op",
    "Ttilde_op",
    "euler_op",
    "U0_op",
    "Um1_op",
    "partial_op",
    "sigma_op",
    "parse_label",
    "label_weight",
    "commutator_relations",
]


@lru_cache(maxsize=None)
def _reorder(b: int, g: int) -> tuple:
    """d^b sigma^g = sum_j C(b,j) g!/(g-j)! sigma^(g-j) d^(b-j), one variable."""
    out = []
    falling = 1
    for j in range(min(b, g) + 1):
        out.append((j, comb(b, j) * falling))
        falling *= g - j
    return tuple(out)


class WeylOp:
    __slots__ = ("k", "_terms")

    def __init__(self, k: int, terms: Mapping | None = None):
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"k must be a positive integer, got {k!r}")
        clean: dict = {}
        for (alpha, beta), c in (terms or {}).items():
            alpha, beta = tuple(alpha), tuple(beta)
            if len(alpha) != k or len(beta) != k:
                raise ValueError(f"bad multi-index length for k={k}")
            if any(e < 0 for e in alpha + beta):
                raise ValueError("negative exponent")
            c = as_coeff(c)
            s = clean.get((alpha, beta))
            clean[(alpha, beta)] = c if s is None else s + c
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "_terms", {key: c for key, c in clean.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("WeylOp is immutable")

    @classmethod
    def _make(cls, k: int, terms: dict) -> "WeylOp":
        obj = object.__new__(cls)
        object.__setattr__(obj, "k", k)
        object.__setattr__(obj, "_terms", terms)
        return obj

    @classmethod
    def zero(cls, k: int) -> "WeylOp":
        return cls._make(k, {})

    @classmethod
    def scalar(cls, k: int, c=1) -> "WeylOp":
        c = as_coeff(c)
        z = (0,) * k
        return cls._make(k, {(z, z): c} if c else {})

    identity = classmethod(lambda cls, k: cls.scalar(k, 1))

    @classmethod
    def from_poly(cls, p: SigmaPoly) -> "WeylOp":
        z = (0,) * p.k
        return cls._make(p.k, {(g, z): c for g, c in p.terms.items()})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        def key(ab):
            a, b = ab
            return (sum(a) + sum(b), a + b)

        for ab in sorted(self._terms, key=key, reverse=True):
            yield ab, self._terms[ab]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def order(self) -> int:
        return max((sum(b) for _, b in self._terms), default=-1)

    # ring operations ------------------------------------------------------

    def _check(self, other: "WeylOp"):
        if other.k != self.k:
            raise MismatchedArity(f"k={self.k} vs k={other.k}")

    def _lift(self, other):
        if isinstance(other, WeylOp):
            self._check(other)
            return other
        if isinstance(other, SigmaPoly):
            if other.k != self.k:
                raise MismatchedArity(f"k={self.k} vs k={other.k}")
            return WeylOp.from_poly(other)
        c = _coerce_or_none(other)
        return None if c is None else WeylOp.scalar(self.k, c)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for ab, c in o._terms.items():
            s = out.get(ab)
            if s is None:
                out[ab] = c
            else:
                s = s + c
                if s:
                    out[ab] = s
                else:
                    del out[ab]
        return WeylOp._make(self.k, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp._make(self.k, {ab: -c for ab, c in self._terms.items()})

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

    def scale(self, c) -> "WeylOp":
        c = as_coeff(c)
        if not c:
            return WeylOp.zero(self.k)
        return WeylOp._make(self.k, {ab: v * c for ab, v in self._terms.items()})

    def __mul__(self, other):
        """Operator product (self applied after other)."""
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not isinstance(other, WeylOp) and not isinstance(other, SigmaPoly):
            return self.scale(other)
        return weyl_compose(self, o)

    def __rmul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if isinstance(other, SigmaPoly):
            return weyl_compose(o, self)
        return self.scale(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = WeylOp.identity(self.k)
        for _ in range(n):
            out = weyl_compose(self, out)
        return out

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, WeylOp) else other
        if o is None:
            return NotImplemented
        return self.k == o.k and self._terms == o._terms

    def __hash__(self):
        return hash((self.k, frozenset(self._terms.items())))

    def __call__(self, g: SigmaPoly) -> SigmaPoly:
        return weyl_apply(self, g)

    # weights --------------------------------------------------------------

    def weights(self) -> set:
        return {monomial_weight(a) - monomial_weight(b) for a, b in self._terms}

    def weight_decompose(self) -> list:
        buckets: dict = {}
        for (a, b), c in self._terms.items():
            buckets.setdefault(monomial_weight(a) - monomial_weight(b), {})[(a, b)] = c
        return [(w, WeylOp._make(self.k, buckets[w])) for w in sorted(buckets)]

    # text -----------------------------------------------------------------

    def __str__(self):
        def factors(a, b):
            fs = [f"s{h + 1}" if e == 1 else f"s{h + 1}^{e}" for h, e in enumerate(a) if e]
            fs += [f"d{h + 1}" if e == 1 else f"d{h + 1}^{e}" for h, e in enumerate(b) if e]
            return fs

        return render_terms((factors(a, b), c) for (a, b), c in self.items())

    def __repr__(self):
        return f"WeylOp(k={self.k}, {self})"

    @classmethod
    def parse(cls, text: str, k: int) -> "WeylOp":
        """Parse a sum of products; factors are multiplied left to right."""
        total = cls.zero(k)
        for sign, factors in parse_terms(text):
            term = cls.scalar(k, sign)
            for kind, a, b in factors:
                if kind == "c":
                    term = term.scale(a)
                elif kind == "s":
                    term = weyl_compose(term, sigma_op(k, a) ** b)
                else:
                    term = weyl_compose(term, partial_op(k, a) ** b)
            total = total + term
        return total


def _check_pair(P: WeylOp, Q: WeylOp):
    if P.k != Q.k:
        raise MismatchedArity(f"k={P.k} vs k={Q.k}")


def weyl_compose(P: WeylOp, Q: WeylOp) -> WeylOp:
    """Normal-ordered product P.Q."""
    _check_pair(P, Q)
    k = P.k
    out: dict = {}
    for (a1, b1), c1 in P._terms.items():
        for (a2, b2), c2 in Q._terms.items():
            # move d^b1 past sigma^a2 one variable at a time
            choices = [_reorder(b, g) for b, g in zip(b1, a2)]
            c12 = c1 * c2
            for combo in itertools.product(*choices):
                mult = 1
                alpha = []
                beta = []
                for h, (j, m) in enumerate(combo):
                    mult *= m
                    alpha.append(a1[h] + a2[h] - j)
                    beta.append(b1[h] - j + b2[h])
                key = (tuple(alpha), tuple(beta))
                val = c12 * mult
                s = out.get(key)
                out[key] = val if s is None else s + val
    return WeylOp._make(k, {key: c for key, c in out.items() if c})


def commutator(P: WeylOp, Q: WeylOp) -> WeylOp:
    _check_pair(P, Q)
    return weyl_compose(P, Q) - weyl_compose(Q, P)


def weyl_apply(P: WeylOp, g: SigmaPoly) -> SigmaPoly:
    if P.k != g.k:
        raise MismatchedArity(f"operator has k={P.k}, polynomial has k={g.k}")
    k = P.k
    result = SigmaPoly.zero(k)
    derivs: dict = {}
    for (alpha, beta), c in P._terms.items():
        d = derivs.get(beta)
        if d is None:
            d = g
            for h, e in enumerate(beta):
                for _ in range(e):
                    d = d.partial(h + 1)
                    if not d:
                        break
            derivs[beta] = d
        if d:
            result = result + SigmaPoly.monomial(alpha, c) * d
    return result


def pure_weight(P: WeylOp) -> int | None:
    """The common weight w(alpha) - w(beta) of all terms, if there is one.

    The zero operator has no well-defined weight and returns None.
    """
    ws = P.weights()
    return ws.pop() if len(ws) == 1 else None


def weight_from_commutator(P: WeylOp) -> int | None:
    """The scalar w with [U0, P] = w P, found without looking at exponents."""
    if not P:
        return None
    C = commutator(U0_op(P.k), P)
    (ab, c0) = next(iter(P._terms.items()))
    ratio = C._terms.get(ab, GaussianRational(0)) / c0
    if not ratio.is_real or ratio.re.denominator != 1:
        return None
    w = int(ratio.re)
    return w if C == P.scale(w) else None


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------


def _unit(k: int, h: int, n: int = 1) -> tuple:
    v = [0] * k
    v[h - 1] = n
    return tuple(v)


def partial_op(k: int, h: int) -> WeylOp:
    """d_h; indices outside [1, k] give the zero operator."""
    if not 1 <= h <= k:
        return WeylOp.zero(k)
    return WeylOp._make(k, {((0,) * k, _unit(k, h)): ONE})


def sigma_op(k: int, h: int) -> WeylOp:
    """Multiplication by sigma_h, with sigma_0 = 1."""
    if h == 0:
        return WeylOp.identity(k)
    if not 1 <= h <= k:
        raise IndexOutOfRange(f"sigma index {h} outside [0, {k}]")
    return WeylOp._make(k, {(_unit(k, h), (0,) * k): ONE})


def _dd(k: int, i: int, j: int) -> WeylOp:
    return weyl_compose(partial_op(k, i), partial_op(k, j))


def euler_op(k: int) -> WeylOp:
    return sum((weyl_compose(sigma_op(k, h), partial_op(k, h)) for h in range(1, k + 1)),
               WeylOp.zero(k))


def U0_op(k: int) -> WeylOp:
    return sum(
        (weyl_compose(sigma_op(k, h), partial_op(k, h)).scale(h) for h in range(1, k + 1)),
        WeylOp.zero(k),
    )


def Um1_op(k: int) -> WeylOp:
    return sum(
        (weyl_compose(sigma_op(k, h), partial_op(k, h + 1)).scale(k - h) for h in range(0, k)),
        WeylOp.zero(k),
    )


def _A_raw(k: int, p: int, q: int) -> WeylOp:
    # out-of-range partials vanish; used for the shifted indices of the table
    return _dd(k, p, q) - _dd(k, p + 1, q - 1)


def _T_raw(k: int, m: int) -> WeylOp:
    return _dd(k, 1, m - 1) + weyl_compose(partial_op(k, m), euler_op(k))


def A_op(k: int, p: int, q: int) -> WeylOp:
    if not (1 <= p <= k - 1 and 2 <= q <= k):
        raise IndexOutOfRange(f"A({p},{q}) needs p in [1,{k - 1}], q in [2,{k}]")
    return _A_raw(k, p, q)


def T_op(k: int, m: int) -> WeylOp:
    if not 2 <= m <= k:
        raise IndexOutOfRange(f"T({m}) needs m in [2,{k}]")
    return _T_raw(k, m)


def Ttilde_op(k: int, m: int) -> WeylOp:
    if not 2 <= m <= k:
        raise IndexOutOfRange(f"Ttilde({m}) needs m in [2,{k}]")
    return _T_raw(k, m) + partial_op(k, m)


_NAMES = {
    "A": A_op,
    "T": T_op,
    "Ttilde": Ttilde_op,
    "E": lambda k: euler_op(k),
    "U0": lambda k: U0_op(k),
    "U-1": lambda k: Um1_op(k),
}


def parse_label(label: str) -> tuple:
    """'A(1,3)' -> ('A', (1, 3)); 'U-1' -> ('U-1', ())."""
    s = label.replace(" ", "")
    if "(" in s:
        name, rest = s.split("(", 1)
        idx = tuple(int(x) for x in rest.rstrip(")").split(","))
    else:
        name, idx = s, ()
    if name in ("Um1", "U_-1", "U−1"):
        name = "U-1"
    if name not in _NAMES:
        raise ValueError(f"unknown generator {label!r}")
    return name, idx


def make_generator(k: int, name: str, *indices: int) -> WeylOp:
    if not indices and "(" in name:
        name, indices = parse_label(name)
    elif name not in _NAMES:
        name, _ = parse_label(name)
    return _NAMES[name](k, *indices)


def label_weight(label: str) -> int:
    """Formal weight of a generator label (A(p,q): -(p+q), T(m): -m, ...)."""
    name, idx = parse_label(label)
    if name == "A":
        return -(idx[0] + idx[1])
    if name in ("T", "Ttilde"):
        return -idx[0]
    if name == "U-1":
        return -1
    return 0


# --------------------------------------------------------------------------
# commutation relations
# --------------------------------------------------------------------------


def commutator_relations(k: int) -> list:
    """Every commutation relation between U0, U-1 and the generators.

    Returns (name, lhs, rhs) triples with lhs computed as a commutator and rhs
    assembled from generators.  The right-hand sides are the ones that the
    exact engine confirms:

      [U0, A(p,q)]      = -(p+q) A(p,q)
      [U0, T(h)]        = -h T(h)
      [U0, Ttilde(h)]   = -h Ttilde(h)
      [U-1, A(p,q)]     = -(k-q) A(p,q+1) - (k-p-1) A(p+1,q)
      [U-1, T(h)]       = -(k-h) T(h+1) + (k-1) A(1,h)
      [U-1, Ttilde(h)]  = -(k-h) Ttilde(h+1) + (k-1) A(1,h)
      [U0, U-1]         = -U-1

    Terms whose coefficient vanishes (q = k, p = k-1, h = k) are dropped, so
    no out-of-range generator is ever built.
    """
    U0, Um1 = U0_op(k), Um1_op(k)
    rels = []
    for p in range(1, k):
        for q in range(2, k + 1):
            A = A_op(k, p, q)
            rels.append((f"[U0,A({p},{q})]", commutator(U0, A), A.scale(-(p + q))))
            rhs = WeylOp.zero(k)
            if k - q:
                rhs = rhs - A_op(k, p, q + 1).scale(k - q)
            if k - p - 1:
                rhs = rhs - A_op(k, p + 1, q).scale(k - p - 1)
            rels.append((f"[U-1,A({p},{q})]", commutator(Um1, A), rhs))
    for h in range(2, k + 1):
        for name, ctor in (("T", T_op), ("Ttilde", Ttilde_op)):
            G = ctor(k, h)
            rels.append((f"[U0,{name}({h})]", commutator(U0, G), G.scale(-h)))
            rhs = A_op(k, 1, h).scale(k - 1)
            if k - h:
                rhs = rhs - ctor(k, h + 1).scale(k - h)
            rels.append((f"[U-1,{name}({h})]", commutator(Um1, G), rhs))
    rels.append(("[U0,U-1]", commutator(U0, Um1), -Um1))
    return rels
