import cmath

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from lisbon.entire import EntireFn
from lisbon.exactpoly import GaussianRational

pts = np.array([0.3 + 0.1j, -1.2 + 0.7j, 2.0])


def close(f, g):
    return np.allclose(f(pts).astype(complex), g(pts).astype(complex), rtol=1e-13, atol=1e-13)


def test_parse():
    assert EntireFn.parse("poly:1,0,-1/2") == EntireFn.poly([1, 0, GaussianRational.parse("-1/2")])
    assert EntireFn.parse("exp:2") == EntireFn.exp(2)
    assert EntireFn.parse("exp:0") == EntireFn.poly([1])


def test_values():
    f = EntireFn.exp(1) + EntireFn.poly([0, 2])
    assert abs(f.value(1.0) - (cmath.e + 2)) < 1e-15


def test_derivative_and_primitive():
    f = EntireFn({1j: [1, 2]}) + EntireFn.poly([3, 0, 1])
    g = f.antiderivative()
    assert abs(g.at_zero()) < 1e-15
    assert close(g.derivative(), f)


def test_polynomial_primitive_stays_exact():
    g = EntireFn.poly([1, 1]).antiderivative()
    assert g.is_polynomial
    assert g.poly_coeffs() == (0, 1, GaussianRational.parse("1/2"))


@given(st.integers(0, 4), st.complex_numbers(max_magnitude=2, allow_nan=False))
def test_mul_z(n, a):
    f = EntireFn.exp(a) + EntireFn.poly([1, -1])
    zf = f.mul_z(n)
    assert np.allclose(zf(pts).astype(complex), (pts**n) * f(pts).astype(complex))


def test_product():
    f = EntireFn.exp(1) * EntireFn.exp(-1)
    assert f.is_polynomial and f.poly_coeffs() == (1,)
