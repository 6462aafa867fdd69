from fractions import Fraction

import pytest
import sympy as sp

from lisbon.contour import lisbon_F, lisbon_Ftilde, lisbon_Phi
from lisbon.entire import EntireFn
from lisbon.exactpoly import SigmaPoly, monomial_basis
from lisbon.polyroots import SigmaPoint, companion
from lisbon.suites import sample_sigmas
from lisbon.systems import (
    check_S3,
    check_system_numeric,
    check_system_symbolic,
    closedness_check,
    constant_S3_solutions,
    graded_kernel,
    operator_identities,
    operator_system,
    proportional,
    reconstruct_trace_from_phi,
    right_multiplication_expansion,
    u_minus1_injectivity,
)
from lisbon.traces import derived_newton_symbolic, newton_symbolic, vector_trace_symbolic
from lisbon.weyl import Um1_op, weyl_apply
from oracles import apply_sympy, symbols, to_sympy

exp = EntireFn.exp(1)


class TestSymbolicAnnihilation:
    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_traces_are_solutions(self, k):
        for m in range(0, 8):
            assert check_system_symbolic(operator_system("S1", k), newton_symbolic(k, m)).passed
            assert check_system_symbolic(operator_system("S2", k), derived_newton_symbolic(k, m)).passed

    def test_counterexample(self):
        rep = check_system_symbolic(operator_system("S2", 2), SigmaPoly.var(2, 2))
        assert not rep.passed
        assert rep.details["residuals"]["Ttilde(2)"] == "2"

    def test_system_contents(self):
        assert operator_system("S0", 3).labels() == ["T(2)", "T(3)"]
        assert len(operator_system("S1", 3).labels()) == 4 + 2
        assert "Ttilde(3)" in operator_system("S2", 3).labels()


class TestNumericSystems:
    def test_first_kind_solves_S1(self):
        pts = sample_sigmas(3, 2, seed=11, bound=2)
        rep = check_system_numeric(operator_system("S1", 3), lambda S: lisbon_F(exp, S), pts)
        assert rep.passed and rep.residual < 1e-6

    def test_second_kind_solves_S2(self):
        pts = sample_sigmas(2, 2, seed=12, bound=2)
        rep = check_system_numeric(operator_system("S2", 2), lambda S: lisbon_Ftilde(exp, S), pts)
        assert rep.passed

    def test_coordinate_fails_S2(self):
        pts = sample_sigmas(2, 1, seed=13, bound=2)
        rep = check_system_numeric(operator_system("S2", 2), lambda S: S.values[1], pts)
        assert not rep.passed


class TestS3:
    @pytest.mark.parametrize("k", [2, 3])
    def test_vector_integral(self, k):
        pts = sample_sigmas(k, 2, seed=14, bound=2)
        assert check_S3(lambda S: lisbon_Phi(exp, S), pts).passed
        assert check_S3(lambda S: companion(S) @ lisbon_Phi(exp, S), pts).passed

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_symbolic_and_constant(self, k):
        for n in range(5):
            assert check_S3(vector_trace_symbolic(EntireFn.monomial(n), k)).passed
        V = [SigmaPoly.constant(k, int(h == k - 1)) for h in range(k)]
        assert check_S3(V).passed

    def test_wrong_vector_fails(self):
        assert not check_S3([SigmaPoly.var(2, 1), SigmaPoly.constant(2, 1)]).passed

    def test_constant_solutions(self):
        assert constant_S3_solutions(1) == [(Fraction(1),)]
        for k in (2, 3, 4):
            assert constant_S3_solutions(k) == [tuple([0] * (k - 1) + [1])]


class TestKernels:
    def test_examples(self):
        assert graded_kernel(operator_system("S2", 2), 2).basis == (SigmaPoly.parse("s1^2 - s2", 2),)
        assert graded_kernel(operator_system("S0", 2), 2).basis == (SigmaPoly.parse("s1^2 - 2*s2", 2),)
        assert graded_kernel(operator_system("S2", 2), 0).basis == (SigmaPoly.constant(2, 1),)

    @pytest.mark.parametrize("name", ["S0", "S1", "S2"])
    @pytest.mark.parametrize("k", [2, 3])
    def test_dimension_against_sympy(self, name, k):
        sys = operator_system(name, k)
        for w in range(0, 6):
            basis = [to_sympy(b) for b in monomial_basis(k, w)]
            rows = []
            for _, G in sys:
                images = [sp.Poly(apply_sympy(G, b, k), *symbols(k)) for b in basis]
                monos = sorted({m for im in images for m in im.monoms()})
                rows += [[im.coeff_monomial(m) for im in images] for m in monos]
            ref_dim = len(basis) - (sp.Matrix(rows).rank() if rows else 0)
            kb = graded_kernel(sys, w)
            assert kb.dim == ref_dim == 1
            ref = derived_newton_symbolic(k, w) if name == "S2" else newton_symbolic(k, w)
            assert proportional(kb.basis[0], ref if w else SigmaPoly.constant(k, 1))


class TestLemmas:
    def test_injectivity_examples(self):
        assert u_minus1_injectivity(2, 1).passed
        assert u_minus1_injectivity(1, 2).passed

    def test_injectivity_fails_on_full_weight_piece(self):
        rep = u_minus1_injectivity(2, 2)
        assert not rep.passed
        assert rep.params["dim"] == 2 and rep.params["rank"] == 1
        witness = SigmaPoly.parse(rep.details["kernel"][0], 2)
        g = witness
        for _ in range(2):
            g = weyl_apply(Um1_op(2), g)
        assert g.is_zero() and not witness.is_zero()

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_injectivity_on_solutions(self, k):
        for m in range(1, 7):
            assert u_minus1_injectivity(k, m, within=operator_system("S2", k)).passed

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_operator_identities(self, k):
        for name, lhs, rhs in operator_identities(k):
            assert lhs == rhs, name

    @pytest.mark.parametrize("k", [2, 3])
    def test_ideal_stability(self, k):
        for name in ("S1", "S2"):
            sys = operator_system(name, k)
            for lab in sys.labels():
                for V in ("U0", "U-1"):
                    assert right_multiplication_expansion(sys, lab, V) is not None

    def test_T_only_system_not_stable_under_Um1(self):
        sys = operator_system("S0", 3)
        assert right_multiplication_expansion(sys, "T(3)", "U-1") is None


class TestThreeToOne:
    def test_closedness(self):
        for k in (2, 3):
            for n in range(6):
                assert closedness_check(vector_trace_symbolic(EntireFn.monomial(n), k)).passed
        pts = sample_sigmas(3, 2, seed=15, bound=2)
        assert closedness_check(lambda S: lisbon_Phi(exp, S), pts).passed
        V = [SigmaPoly.constant(3, int(h == 2)) for h in range(3)]
        assert closedness_check(V).passed

    def test_reconstruction(self):
        for k in (2, 3):
            for n in range(5):
                assert reconstruct_trace_from_phi(EntireFn.monomial(n), k=k).passed
        pts = sample_sigmas(3, 3, seed=16, bound=2)
        assert reconstruct_trace_from_phi(exp, pts).passed

    def test_reconstruction_example(self):
        # f = 1, k = 2: g = z, T(g) = s1, Phi(1) = (0, 1)
        s = SigmaPoint([0.4, -1.1])
        rep = reconstruct_trace_from_phi(EntireFn.poly([1]), [s])
        assert rep.passed and rep.residual < 1e-9
