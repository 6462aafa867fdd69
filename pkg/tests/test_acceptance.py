"""Acceptance gate: one test per criterion, each at its stated tolerance.

Every test records a PASS/FAIL line that is printed in the pytest terminal
summary; running this file directly prints the same lines.
"""
import time

import pytest

from conftest import ACCEPTANCE_LINES
from lisbon.contour import lisbon_Phi
from lisbon.entire import EntireFn
from lisbon.exactpoly import SigmaPoly
from lisbon.suites import (
    SuiteConfig,
    sample_sigmas,
    suite_annihilation,
    suite_equivalence,
    suite_kernels,
    suite_lagrange,
    suite_lemmas,
    suite_s3,
    suite_three_to_one,
)
from lisbon.systems import check_S3, closedness_check

GRID = SuiteConfig(ks=(2, 3, 4, 5, 6), samples=10, seed=0, bound=5.0, min_disc=1e-4)


def record(number, title, reports, extra=""):
    failed = [r for r in reports if not r.passed]
    worst = max((r.residual for r in reports), default=0.0)
    status = "PASS" if not failed else "FAIL"
    line = f"{status} criterion {number:>2}: {title} ({len(reports) - len(failed)}/{len(reports)} checks, worst residual {worst:.2e}{extra})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return failed


def _lines(failed):
    return "\n".join(r.line() for r in failed[:10])


def test_criterion_01_integrals_equal_traces():
    t = time.perf_counter()
    reports = [r for r in suite_equivalence(GRID) if r.check != "equivalence_F_log=F"]
    elapsed = time.perf_counter() - t
    failed = record(1, "Lisbon integrals equal root-sum traces at 1e-9", reports, f", {elapsed:.1f} s")
    assert not failed, _lines(failed)
    assert elapsed < 60


def test_criterion_02_log_formula():
    reports = [r for r in suite_equivalence(GRID) if r.check == "equivalence_F_log=F"]
    failed = record(2, "log form of the first integral agrees at 1e-8", reports)
    assert not failed, _lines(failed)


def test_criterion_03_symbolic_annihilation():
    t = time.perf_counter()
    reports = [r for r in suite_annihilation((2, 3, 4, 5), 10) if r.check != "annihilation_S0"]
    elapsed = time.perf_counter() - t
    failed = record(3, "S1 kills N_m and S2 kills DN_m, m <= 10, k <= 5", reports, f", {elapsed:.1f} s")
    assert not failed, _lines(failed)
    assert elapsed < 30


def test_criterion_04_graded_kernels():
    reports = suite_kernels((2, 3, 4), 8, ("S2", "S0"))
    failed = record(4, "weight-w kernels of S2 and S0 are spanned by DN_w and N_w", reports)
    assert not failed, _lines(failed)


def test_criterion_05_vector_system():
    f = EntireFn.exp(1)
    reports = suite_s3((2, 3), GRID, f, numeric_samples=3)
    reports += suite_s3((4,), GRID, f, numeric_samples=0)
    failed = record(5, "S3: vector integrals, A.Phi, symbolic Phi, constant solutions", reports)
    assert not failed, _lines(failed)


def test_criterion_06_weyl_identities():
    reports = suite_lemmas((2, 3, 4, 5), 10, ("commutators", "weight"))
    failed = record(6, "commutator table, [U0,U-1] = -U-1, weight lemma", reports)
    assert not failed, _lines(failed)


def test_criterion_07_derived_newton_calculus():
    reports = suite_lemmas((1, 2, 3, 4, 5), 10, ("derive", "dn-vanish", "newton-derivative", "dn-monic"))
    failed = record(7, "U-1 lowers DN_m, vanishing range, d1 N_m = m DN_(m-1), monic", reports)
    assert not failed, _lines(failed)


def test_criterion_08_u_minus1_injective_on_weight_pieces():
    reports = suite_lemmas((1, 2, 3, 4), 8, ("poids",))
    failed = record(8, "U-1^m injective on every weight-m piece, k <= 4, m <= 8", reports)
    assert not failed, _lines(failed)


def test_criterion_09_companion_identities():
    reports = suite_lemmas((2, 3, 4, 5), 10, ("companion", "calcul"))
    failed = record(9, "companion derivative identity and matrix line equalities", reports)
    assert not failed, _lines(failed)


def test_criterion_10_lagrange_bridge():
    cfg = SuiteConfig(ks=GRID.ks, samples=GRID.samples, seed=GRID.seed, functions=("exp:1",))
    reports = suite_lagrange(cfg)
    failed = record(10, "division identity, Phi -> Pi, Pi -> Phi round trip", reports)
    assert not failed, _lines(failed)


def test_criterion_11_three_to_one():
    reports = suite_three_to_one((2, 3), GRID, ("poly:1", "poly:0,1", "poly:0,0,1", "exp:1"), 3)
    failed = record(11, "closedness and trace recovery from Phi", reports)
    assert not failed, _lines(failed)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
