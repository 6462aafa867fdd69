"""Independent reference computations built on sympy."""
from functools import lru_cache

import sympy as sp

from fractions import Fraction

from lisbon.exactpoly import GaussianRational, SigmaPoly


def symbols(k):
    return sp.symbols(f"s1:{k + 1}")


def to_sympy(p: SigmaPoly):
    s = symbols(p.k)
    expr = sp.Integer(0)
    for gamma, c in p.terms.items():
        term = sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(
            c.im.numerator, c.im.denominator
        )
        for v, e in zip(s, gamma):
            term *= v**e
        expr += term
    return sp.expand(expr)


def from_sympy(expr, k) -> SigmaPoly:
    s = symbols(k)
    poly = sp.Poly(sp.expand(expr), *s)
    terms = {}
    for mon, c in poly.terms():
        re, im = c.as_real_imag()
        terms[tuple(mon)] = GaussianRational(_frac(re), _frac(im))
    return SigmaPoly(k, terms)


def _frac(x):
    x = sp.Rational(x)
    return Fraction(int(x.p), int(x.q))


@lru_cache(maxsize=None)
def newton_oracle(k, m):
    """Power sum of k roots, rewritten in elementary symmetric functions."""
    from sympy.polys.polyfuncs import symmetrize

    z = sp.symbols(f"z1:{k + 1}")
    if m == 0:
        return from_sympy(sp.Integer(k), k)
    sym, rem, mapping = symmetrize(sum(v**m for v in z), *z, formal=True)
    assert rem == 0
    subs = {name: s for (name, _), s in zip(mapping, symbols(k))}
    return from_sympy(sym.subs(subs), k)


@lru_cache(maxsize=None)
def derived_newton_oracle(k, m):
    """Residue at infinity of z^(m+k-1)/P: the t^m coefficient of 1/Q(t),
    Q(t) = sum (-1)^h s_h t^h."""
    if m < 0:
        return SigmaPoly.zero(k)
    t = sp.Symbol("t")
    s = symbols(k)
    Q = 1 + sum((-1) ** h * s[h - 1] * t**h for h in range(1, k + 1))
    ser = sp.series(1 / Q, t, 0, m + 1).removeO()
    return from_sympy(sp.expand(ser).coeff(t, m), k)


def apply_sympy(op, expr, k):
    """Apply a WeylOp term by term with sympy differentiation."""
    s = symbols(k)
    out = sp.Integer(0)
    for (alpha, beta), c in op.terms.items():
        d = expr
        for v, e in zip(s, beta):
            if e:
                d = sp.diff(d, v, e)
        coef = sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(
            c.im.numerator, c.im.denominator
        )
        for v, e in zip(s, alpha):
            coef *= v**e
        out += coef * d
    return sp.expand(out)
