"""Exact rational linear algebra: fraction-free row reduction and nullspaces."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def _integer_row(row: Sequence) -> list:
    row = [Fraction(x) for x in row]
    scale = lcm(*(x.denominator for x in row)) if row else 1
    return [int(x * scale) for x in row]


def _primitive(row: list) -> list:
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            return row
    return [x // g for x in row] if g > 1 else row


def echelon(rows: Sequence[Sequence], ncols: int) -> tuple:
    """Row-echelon form over Z, kept primitive; returns (rows, pivot columns).

    Each elimination step is pivot*row - factor*pivot_row, so entries stay
    integral; dividing by the row content keeps them from growing.
    """
    work = [_integer_row(r) for r in rows]
    for r in work:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    pivots = []
    top = 0
    for col in range(ncols):
        pr = next((i for i in range(top, len(work)) if work[i][col]), None)
        if pr is None:
            continue
        work[top], work[pr] = work[pr], work[top]
        p = work[top]
        for i in range(len(work)):
            if i != top and work[i][col]:
                f = work[i][col]
                work[i] = _primitive([p[c] * f - x * p[col] for c, x in enumerate(work[i])])
                work[i] = [-x for x in work[i]]
        work[top] = _primitive(p)
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(echelon(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of {x : M x = 0} as Fraction vectors in reduced echelon form.

    Vectors are normalized so that, listed in order, each has its first
    nonzero coordinate equal to 1 and that coordinate is zero in the others.
    """
    red, pivots = echelon(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for r, pc in zip(red, pivots):
            x[pc] = Fraction(-r[fc], r[pc])
        basis.append(x)
    return reduce_basis(basis, ncols)


def reduce_basis(vectors: Sequence[Sequence], ncols: int) -> list:
    """Reduced row-echelon form of a spanning set (rational, leading ones)."""
    red, pivots = echelon(vectors, ncols) if vectors else ([], [])
    out = []
    for r, pc in zip(red, pivots):
        out.append([Fraction(x, r[pc]) for x in r])
    return out


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list | None:
    """One exact solution of M x = b (free variables set to 0), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = echelon(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in zip(red, pivots):
        x[pc] = Fraction(r[ncols], r[pc])
    return x
