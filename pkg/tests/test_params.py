"""Parameter validation, weight-structure analysis, and denumerants."""

import math
from fractions import Fraction

import pytest

from barneszeta import (
    BarnesParams,
    ConflictingDeclaration,
    EmptyWeights,
    NonPositiveShift,
    NonPositiveWeight,
    Overflow,
    WeightKind,
    analyze_weights,
    denumerant,
    denumerant_table,
    validate_params,
)


def brute_denumerant_table(p, k_max):
    """Count representations k = sum m_i p_i by direct enumeration."""
    counts = [0] * (k_max + 1)

    def rec(i, total):
        if i == len(p):
            counts[total] += 1
            return
        m = 0
        while total + m * p[i] <= k_max:
            rec(i + 1, total + m * p[i])
            m += 1

    rec(0, 0)
    return counts


class TestValidateParams:
    def test_accepts_and_freezes(self):
        params = validate_params(0.5, [1, 2.0, math.pi])
        assert isinstance(params, BarnesParams)
        assert params.a == 0.5
        assert params.w == (1.0, 2.0, math.pi)
        assert params.r == 3
        assert params.weight_sum == pytest.approx(3.0 + math.pi, rel=1e-15)
        assert params.weight_product == pytest.approx(2.0 * math.pi, rel=1e-15)

    def test_nonpositive_shift(self):
        with pytest.raises(NonPositiveShift):
            validate_params(0.0, [1.0])
        with pytest.raises(NonPositiveShift):
            validate_params(-1.0, [1.0])
        with pytest.raises(NonPositiveShift):
            validate_params(float("nan"), [1.0])

    def test_nonpositive_weight(self):
        with pytest.raises(NonPositiveWeight):
            validate_params(1.0, [1.0, 0.0])
        with pytest.raises(NonPositiveWeight):
            validate_params(1.0, [float("inf")])

    def test_empty_weights(self):
        with pytest.raises(EmptyWeights):
            validate_params(1.0, [])


class TestAnalyzeWeights:
    def test_exact_rationals_get_common_denominator(self):
        st = analyze_weights([Fraction(3, 4), Fraction(5, 6)])
        assert st.kind is WeightKind.RATIONAL
        assert st.q == 12
        assert st.p == (9, 10)

    def test_integers_are_exact(self):
        st = analyze_weights([Fraction(1), Fraction(2)])
        assert st.kind is WeightKind.RATIONAL
        assert st.q == 1 and st.p == (1, 2)

    def test_declared_independent_wins(self):
        st = analyze_weights([Fraction(1), Fraction(1)], declared_mode="independent")
        assert st.kind is WeightKind.ASSUMED_INDEPENDENT

    def test_floats_never_rational(self):
        st = analyze_weights([0.75, 5 / 6])
        assert st.kind is WeightKind.ASSUMED_INDEPENDENT
        with pytest.raises(ConflictingDeclaration):
            analyze_weights([0.75, 5 / 6], declared_mode="rational")

    def test_rescaling_by_rational_keeps_p_pattern(self):
        # Scaling all weights by a positive rational c rescales q but leaves
        # the integer vector p proportional.
        base = [Fraction(3, 4), Fraction(5, 6)]
        st0 = analyze_weights(base)
        for c in (Fraction(2, 3), Fraction(7, 2), Fraction(5)):
            st = analyze_weights([wi * c for wi in base])
            assert st.kind is WeightKind.RATIONAL
            # p vectors are proportional: cross-multiplication test
            assert st.p[0] * st0.p[1] == st.p[1] * st0.p[0]
            # and q scales consistently: w_i = p_i / q on both sides
            assert Fraction(st.p[0], st.q) == base[0] * c


class TestDenumerant:
    def test_k_zero_is_one(self):
        for p in ([1], [3], [2, 5], [4, 4, 4], [1, 2, 3, 4]):
            assert denumerant(p, 0) == 1

    def test_stars_and_bars(self):
        # sum_{k<=K} R_{[1]*r}(k) = binomial(K+r, r)
        for r in range(1, 6):
            table = denumerant_table([1] * r, 30)
            for K in range(31):
                assert sum(table[: K + 1]) == math.comb(K + r, r)

    def test_matches_brute_force_exhaustively(self):
        # every p with entries in 1..5, r <= 3, k <= 60
        for r in (1, 2, 3):
            for idx in range(5**r):
                p, v = [], idx
                for _ in range(r):
                    p.append(v % 5 + 1)
                    v //= 5
                assert denumerant_table(p, 60) == brute_denumerant_table(p, 60)

    def test_overflow_guard(self):
        with pytest.raises(Overflow):
            denumerant_table([1] * 200, 1000)

    def test_rejects_bad_parts(self):
        with pytest.raises(Exception):
            denumerant_table([0, 2], 10)
        with pytest.raises(Exception):
            denumerant_table([], 10)
