from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import sigma_polys
from lisbon.errors import MismatchedArity
from lisbon.exactpoly import (
    GaussianRational,
    SigmaPoly,
    as_coeff,
    eval_poly,
    monomial_basis,
    partial,
    partitions_count,
    poly_arith,
    weight_decompose,
)
from oracles import to_sympy

s1, s2 = SigmaPoly.var(2, 1), SigmaPoly.var(2, 2)


def P(text, k):
    return SigmaPoly.parse(text, k)


class TestGaussianRational:
    def test_parse_forms(self):
        assert GaussianRational.parse("3/2") == Fraction(3, 2)
        assert GaussianRational.parse("1/2-3/4i") == GaussianRational(Fraction(1, 2), Fraction(-3, 4))
        assert GaussianRational.parse("-i") == GaussianRational(0, -1)
        assert GaussianRational.parse("(1+2i)") == GaussianRational(1, 2)

    def test_from_complex_is_exact(self):
        g = GaussianRational.from_complex(0.1 + 0.5j)
        assert complex(g) == 0.1 + 0.5j
        assert g.re == Fraction(0.1)

    def test_floats_refused(self):
        with pytest.raises(TypeError):
            as_coeff(0.5)

    @given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(1, 9))
    def test_division_inverts_multiplication(self, a, b, c, d):
        x = GaussianRational(a, b)
        y = GaussianRational(c, d)
        assert (x * y) / y == x

    def test_str_round_trip(self):
        for text in ("0", "1", "-3/2", "2i", "1/2+3i", "-1-i"):
            g = GaussianRational.parse(text)
            assert GaussianRational.parse(str(g)) == g


class TestArithmetic:
    def test_examples(self):
        assert poly_arith(s1, s1, "sub").is_zero()
        assert poly_arith(s1, s1, "mul") == s1**2
        q = poly_arith(s1**2 - s2, s2, "add")
        assert q == s1**2 and len(q) == 1

    def test_arity_mismatch(self):
        with pytest.raises(MismatchedArity):
            s1 + SigmaPoly.var(3, 1)

    @given(sigma_polys(k=2), sigma_polys(k=2), sigma_polys(k=2))
    def test_ring_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a - a == SigmaPoly.zero(2)

    @given(sigma_polys(k=3), sigma_polys(k=3))
    def test_product_matches_sympy(self, a, b):
        assert to_sympy(a * b) == (to_sympy(a) * to_sympy(b)).expand()


class TestPartial:
    def test_examples(self):
        assert partial(s1**2, 1) == s1.scale(2)
        assert partial(s2, 1).is_zero()
        n2 = s1**2 - s2.scale(2)
        assert partial(n2, 1) == s1.scale(2)

    def test_index_range(self):
        with pytest.raises(IndexError):
            partial(s1, 3)

    @given(sigma_polys(k=3), st.integers(1, 3))
    def test_lowers_weight_by_h(self, p, h):
        for w, comp in weight_decompose(p):
            d = partial(comp, h)
            assert d.is_zero() or d.pure_weight() == w - h

    @given(sigma_polys(k=2), sigma_polys(k=2), st.integers(1, 2))
    def test_leibniz(self, a, b, h):
        assert partial(a * b, h) == partial(a, h) * b + a * partial(b, h)


class TestWeights:
    def test_decompose_examples(self):
        assert weight_decompose(s1**2 - s2) == [(2, s1**2 - s2)]
        one = SigmaPoly.constant(2, 1)
        assert weight_decompose(one + s1) == [(0, one), (1, s1)]
        k3 = P("s1*s3 + s2", 3)
        assert weight_decompose(k3) == [(2, P("s2", 3)), (4, P("s1*s3", 3))]

    @given(sigma_polys())
    def test_decomposition_sums_back(self, p):
        parts = weight_decompose(p)
        assert sum((c for _, c in parts), SigmaPoly.zero(p.k)) == p
        assert [w for w, _ in parts] == sorted({w for w, _ in parts})

    def test_basis_examples(self):
        assert monomial_basis(2, 2) == [P("s2", 2), P("s1^2", 2)]
        assert monomial_basis(1, 3) == [P("s1^3", 1)]
        assert monomial_basis(3, 3) == [P("s3", 3), P("s1*s2", 3), P("s1^3", 3)]

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_basis_size_is_partition_count(self, k):
        for w in range(13):
            basis = monomial_basis(k, w)
            assert len(basis) == partitions_count(w, k)
            assert all(b.pure_weight() == w for b in basis)

    def test_partition_oracle(self):
        # partitions of 12 into parts <= 5, counted by brute force
        def brute(w, m):
            if w == 0:
                return 1
            return sum(brute(w - p, p) for p in range(1, min(w, m) + 1))

        assert partitions_count(12, 5) == brute(12, 5)


class TestEvaluateAndText:
    def test_eval_examples(self):
        assert eval_poly(s1**2 - s2, (3, 2)) == 7
        assert eval_poly(SigmaPoly.constant(2, 1), (0.3, -1j)) == 1

    @given(sigma_polys())
    def test_parse_round_trip(self, p):
        assert SigmaPoly.parse(str(p), p.k) == p

    def test_gaussian_coefficients_render(self):
        text = "(1/2+3i)*s1*s2^2 - 3/2*s1"
        assert str(SigmaPoly.parse(text, 2)) == text
