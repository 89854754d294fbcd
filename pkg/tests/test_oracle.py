"""Reference oracles: Hurwitz zeta, naive multi-sums, equal-weight reduction."""

import math

import mpmath
import pytest

from barneszeta import (
    BudgetExceeded,
    PolePoint,
    equal_weight_reduction,
    eval_direct,
    hurwitz_zeta,
    naive_multisum,
    validate_params,
)

PI2_6 = math.pi**2 / 6.0
ZETA3 = 1.2020569031595943


class TestHurwitzZeta:
    def test_basel_value_bracketed(self):
        # Independent derivation: partial sum plus integral-tail bracket.
        N = 4000
        partial = math.fsum((n + 1.0) ** -2 for n in range(N))
        lo, hi = partial + 1.0 / (N + 1), partial + 1.0 / N
        assert lo < PI2_6 < hi
        res = hurwitz_zeta(2.0, 1.0, 1e-12)
        assert lo - 1e-9 < res.value.real < hi + 1e-9
        assert abs(res.value - PI2_6) <= max(res.claimed_abs_error, 1e-13)
        assert res.value.imag == 0.0

    def test_apery_value(self):
        res = hurwitz_zeta(3.0, 1.0, 1e-13)
        assert abs(res.value - ZETA3) <= 1e-12

    def test_shift_identity(self):
        # zeta(s, 2) = zeta(s, 1) - 1
        for s in (2.0, 3.5 + 2.0j, 0.3 - 4.0j):
            a = hurwitz_zeta(s, 2.0, 1e-13).value
            b = hurwitz_zeta(s, 1.0, 1e-13).value
            assert abs(a - (b - 1.0)) < 1e-12

    def test_halving_tolerance_self_consistency(self):
        for s, alpha in ((2.0, 1.0), (0.5 + 10.0j, 0.3), (-0.5, 2.7), (4.0, 0.25)):
            for tol in (1e-8, 1e-10, 1e-12):
                v1 = hurwitz_zeta(s, alpha, tol).value
                v2 = hurwitz_zeta(s, alpha, tol / 2.0).value
                assert abs(v1 - v2) < tol

    def test_against_mpmath_grid(self):
        mpmath.mp.dps = 30
        for s in (-0.5, 0.3 + 7.0j, 2.0 + 50.0j, 4.0, 1.5 - 3.0j):
            for alpha in (0.3, 1.0, 2.7):
                res = hurwitz_zeta(s, alpha, 1e-13)
                ref = complex(mpmath.zeta(s, alpha))
                assert abs(res.value - ref) <= max(
                    res.claimed_abs_error, 1e-12 * max(1.0, abs(ref))
                )

    def test_pole_point(self):
        with pytest.raises(PolePoint):
            hurwitz_zeta(1.0, 1.0, 1e-10)
        with pytest.raises(PolePoint):
            hurwitz_zeta(1.0 + 1e-8j, 0.5, 1e-10)


class TestNaiveMultisum:
    def test_single_term(self):
        p = validate_params(1.0, [1.0])
        assert naive_multisum(p, 2.0, 0) == pytest.approx(1.0)

    def test_four_terms_by_hand(self):
        p = validate_params(1.0, [1.0, 2.0])
        # (1) + (1+1) + (1+2) + (1+1+2) at s=1: 1 + 1/2 + 1/3 + 1/4
        assert naive_multisum(p, 1.0, 1) == pytest.approx(25.0 / 12.0, rel=1e-14)

    def test_monotone_in_cutoff(self):
        p = validate_params(0.7, [1.0, 1.3])
        vals = [naive_multisum(p, 3.1, c).real for c in (10, 30, 100, 300)]
        assert vals == sorted(vals)

    def test_approaches_hurwitz_reduction(self):
        # r=2, equal unit weights, s=4: sum equals zeta(3) in the limit.
        p = validate_params(1.0, [1.0, 1.0])
        v = naive_multisum(p, 4.0, 2000).real
        assert v < ZETA3
        assert ZETA3 - v < 1e-5

    def test_budget(self):
        p = validate_params(1.0, [1.0, 1.0, 1.0])
        with pytest.raises(BudgetExceeded):
            naive_multisum(p, 4.0, 10_000)


class TestEqualWeightReduction:
    def test_r1_collapses_to_hurwitz(self):
        for s in (2.5, 3.0 + 1.0j):
            red = equal_weight_reduction(1, s, 0.5, 1e-12)
            ref = hurwitz_zeta(s, 0.5, 1e-12)
            assert abs(red.value - ref.value) <= 1e-12 * max(1.0, abs(ref.value))

    def test_r2_unit_weights_gives_apery(self):
        red = equal_weight_reduction(2, 4.0, 1.0, 1e-13)
        assert abs(red.value - ZETA3) < 1e-12

    def test_r2_half_shift_decomposition(self):
        red = equal_weight_reduction(2, 3.5, 0.5, 1e-13)
        ref = (
            hurwitz_zeta(2.5, 0.5, 1e-13).value
            + 0.5 * hurwitz_zeta(3.5, 0.5, 1e-13).value
        )
        assert abs(red.value - ref) < 1e-12
        # cross-check against the naive sum (truncated; tail ~ N^{-1.5})
        p = validate_params(0.5, [1.0, 1.0])
        naive = naive_multisum(p, 3.5, 3000)
        assert abs(red.value - naive) < 1e-4

    def test_eval_direct_agreement(self):
        # Direct summation cross-check.  At the tight 1e-9 tolerance the
        # rigorous tail bound makes the direct sum affordable only well
        # above the abscissa (distance >= 2.5); nearer exponents are checked
        # at the loosest affordable tolerance.
        for r in (1, 2, 3):
            for s in (r + 2.5, r + 2.5 + 2.0j):
                for a in (0.5, 1.0):
                    params = validate_params(a, [1.0] * r)
                    got = eval_direct(params, s, 1e-9 if r < 3 else 1e-6)
                    ref = equal_weight_reduction(r, s, a, 1e-13)
                    tol = 1e-9 if r < 3 else 1e-6
                    assert abs(got.value - ref.value) <= tol * abs(ref.value)
        # the r=1 distance-1 exponent, affordable at 1e-7
        got = eval_direct(validate_params(1.0, [1.0]), 2.0, 1e-7)
        ref = hurwitz_zeta(2.0, 1.0, 1e-13)
        assert abs(got.value - ref.value) <= 1e-7 * abs(ref.value)
