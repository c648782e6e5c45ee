import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from conftest import classify_pairs, random_pair
from fasttau import oracle
from fasttau.core import TauResult, TieCounts, kendall_tau, validate_sample
from fasttau.errors import DegenerateInput, ExactNotApplicable
from fasttau.inference import (
    Alternative,
    Method,
    exact_null_cdf,
    kendall_cor_test,
    kendall_test,
    null_variance,
    tau_normal_statistic,
)


def enumerated_cdf(n):
    table = oracle.enumerate_null_distribution(n)
    total = math.factorial(n)
    out, acc = {}, 0
    for k in sorted(table):
        acc += table[k]
        out[k] = acc / total
    return out


class TestExactNullCdf:
    def test_n3(self):
        assert exact_null_cdf(3, 3) == 1.0
        assert exact_null_cdf(-3, 3) == pytest.approx(1 / 6, abs=1e-15)

    def test_n4_zero(self):
        table = oracle.enumerate_null_distribution(4)
        expected = sum(v for k, v in table.items() if k <= 0) / 24
        assert expected == 15 / 24
        assert exact_null_cdf(0, 4) == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_matches_enumeration(self, n):
        for k, p in enumerated_cdf(n).items():
            assert abs(exact_null_cdf(k, n) - p) <= 1e-12

    def test_out_of_range_and_between(self):
        assert exact_null_cdf(-100, 5) == 0.0
        assert exact_null_cdf(100, 5) == 1.0
        # unreachable odd value sits between its neighbours
        assert exact_null_cdf(-1, 5) == exact_null_cdf(-2, 5)

    def test_large_n_is_a_distribution(self):
        n = 49
        m = n * (n - 1) // 2
        assert exact_null_cdf(m, n) == 1.0
        assert exact_null_cdf(-m, n) == pytest.approx(1 / math.factorial(n), rel=1e-12)
        # m is even, so P(S <= -2) = P(S >= 2) = 1 - P(S <= 0)
        assert exact_null_cdf(-2, n) + exact_null_cdf(0, n) == pytest.approx(1.0, abs=1e-14)
        assert exact_null_cdf(0, n) > exact_null_cdf(-2, n)

    def test_matches_exact_fraction(self):
        # independent route: counts from the recursion as exact fractions
        n = 12
        m = n * (n - 1) // 2
        w = [1]
        for size in range(2, n + 1):
            new = [0] * (len(w) + size - 1)
            for s, count in enumerate(w):
                for j in range(size):
                    new[s + j] += count
            w = new
        for k in range(-m, m + 1, 2):
            s0 = (m - k) // 2
            p = Fraction(sum(w[s0:]), math.factorial(n))
            assert exact_null_cdf(k, n) == pytest.approx(float(p), rel=1e-13, abs=1e-300)

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            exact_null_cdf(0, 1)


class TestNormalStatistic:
    def test_zero_numerator_n10(self):
        # untied n=10 has odd m = 45, so c - d = 0 only arises as a constructed result
        r = TauResult(tau=0.0, n=10, m=45, swaps=0, numerator=0, ties=TieCounts(0, 0, 0))
        assert null_variance(r) == pytest.approx(125.0)
        assert tau_normal_statistic(r) == 0.0

    def test_perfect_n10(self):
        x = np.arange(10.0)
        r = kendall_tau(validate_sample(x, x))
        assert r.numerator == 45
        assert null_variance(r) == pytest.approx(10 * 9 * 25 / 18)
        assert tau_normal_statistic(r) == pytest.approx(45 / math.sqrt(125), rel=1e-15)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_untied_variance_matches_enumeration(self, n):
        table = oracle.enumerate_null_distribution(n)
        var = Fraction(sum(k * k * c for k, c in table.items()), math.factorial(n))
        r = kendall_tau(validate_sample(np.arange(n), np.arange(n)))
        assert null_variance(r) == pytest.approx(float(var), rel=1e-12)
        assert float(var) == pytest.approx(n * (n - 1) * (2 * n + 5) / 18, rel=1e-12)

    @pytest.mark.parametrize(
        "x, y",
        [
            ([1, 1, 2, 3, 4, 5], [1, 2, 2, 2, 3, 4]),
            ([1, 1, 1, 2, 2, 3, 4], [5, 5, 6, 6, 7, 8, 8]),
            ([0, 0, 1, 1, 2, 2, 2], [0, 1, 2, 3, 4, 5, 6]),
            ([1, 2, 3, 4, 5, 6, 7], [3, 3, 3, 3, 1, 1, 2]),
        ],
    )
    def test_tied_variance_matches_permutation_null(self, x, y):
        # variance of c - d over all n! re-pairings of y with x held fixed
        total = Fraction(0)
        count = 0
        for perm in itertools.permutations(y):
            c, d, *_ = classify_pairs(x, list(perm))
            total += (c - d) ** 2
            count += 1
        r = kendall_tau(validate_sample(x, y))
        assert null_variance(r) == pytest.approx(float(total / count), rel=1e-12)

    def test_continuity_moves_towards_zero(self):
        x = np.arange(10.0)
        r = kendall_tau(validate_sample(x, x))
        assert tau_normal_statistic(r, continuity=True) == pytest.approx(44 / math.sqrt(125))
        r = kendall_tau(validate_sample(x, -x))
        assert tau_normal_statistic(r, continuity=True) == pytest.approx(-44 / math.sqrt(125))

    def test_all_y_tied_is_degenerate(self):
        with pytest.raises(DegenerateInput):
            kendall_test(validate_sample([1, 2, 3, 4], [2, 2, 2, 2]), method="normal")


class TestKendallTest:
    def test_greater_exact(self):
        res = kendall_test(validate_sample([1, 2, 3], [1, 2, 3]), "greater", "exact")
        table = oracle.enumerate_null_distribution(3)
        assert res.p_value == pytest.approx(table[3] / 6, abs=1e-15)
        assert res.statistic == 1.0
        assert res.method is Method.EXACT

    def test_less_exact(self):
        res = kendall_test(validate_sample([1, 2, 3], [1, 2, 3]), "less", "exact")
        assert res.p_value == 1.0

    def test_alternative_text(self):
        s = validate_sample([1, 2, 3], [1, 3, 2])
        assert kendall_test(s, "less").alternative_text == "alternative hypothesis: true tau is less than 0"
        assert kendall_test(s, "greater").alternative_text.endswith("greater than 0")
        assert kendall_test(s, "two-sided").alternative_text.endswith("not equal to 0")

    def test_auto_method(self, rng):
        x, y = random_pair(rng, 49, "untied")
        assert kendall_test(validate_sample(x, y)).method is Method.EXACT
        x, y = random_pair(rng, 50, "untied")
        assert kendall_test(validate_sample(x, y)).method is Method.NORMAL
        x, y = random_pair(rng, 20, "tie_heavy")
        assert kendall_test(validate_sample(x, y)).method is Method.NORMAL

    def test_exact_with_ties(self):
        with pytest.raises(ExactNotApplicable):
            kendall_test(validate_sample([1, 1, 2, 3], [1, 2, 3, 4]), method="exact")

    def test_bad_alternative(self):
        with pytest.raises(ValueError):
            kendall_test(validate_sample([1, 2], [1, 2]), alternative="sideways")

    def test_bad_method(self):
        with pytest.raises(ValueError):
            kendall_test(validate_sample([1, 2], [1, 2]), method="bootstrap")

    def test_statistic_is_tau(self, rng):
        for kind in ("untied", "tie_heavy", "normal"):
            x, y = random_pair(rng, 70, kind)
            s = validate_sample(x, y)
            assert kendall_test(s).statistic == kendall_tau(s).tau

    def test_two_sided_identity_exact(self, rng):
        for n in range(2, 30):
            x, y = random_pair(rng, n, "untied")
            s = validate_sample(x, y)
            lo = kendall_test(s, "less", "exact").p_value
            hi = kendall_test(s, "greater", "exact").p_value
            assert kendall_test(s, "two_sided", "exact").p_value == min(1.0, 2 * min(lo, hi))

    def test_complementarity(self, rng):
        for n in range(2, 40):
            x, y = random_pair(rng, n, "untied")
            s = validate_sample(x, y)
            lo = kendall_test(s, "less", "exact").p_value
            hi = kendall_test(s, "greater", "exact").p_value
            assert lo + hi >= 1.0 - 1e-15
            lo = kendall_test(s, "less", "normal").p_value
            hi = kendall_test(s, "greater", "normal").p_value
            assert abs(lo + hi - 1.0) <= 1e-12

    @pytest.mark.parametrize("n", [5, 11, 30])
    def test_monotone_in_numerator(self, n):
        m = n * (n - 1) // 2
        ks = range(-m, m + 1, 2)
        p_less = [exact_null_cdf(k, n) for k in ks]
        p_greater = [exact_null_cdf(-k, n) for k in ks]
        assert all(a <= b for a, b in zip(p_less, p_less[1:]))
        assert all(a >= b for a, b in zip(p_greater, p_greater[1:]))

    def test_sign_flip_swaps_tails(self, rng):
        for n in range(2, 40, 3):
            x, y = random_pair(rng, n, "untied")
            a = validate_sample(x, y)
            b = validate_sample(x, -y)
            assert kendall_test(a, "less", "exact").p_value == kendall_test(b, "greater", "exact").p_value
            assert kendall_test(a, "greater", "exact").p_value == kendall_test(b, "less", "exact").p_value

    @pytest.mark.parametrize("alternative", ["two-sided", "less", "greater"])
    def test_against_scipy_exact(self, rng, alternative):
        for n in (3, 8, 17, 33, 49):
            x, y = random_pair(rng, n, "untied")
            ours = kendall_test(validate_sample(x, y), alternative, "exact")
            ref = stats.kendalltau(x, y, method="exact", alternative=alternative)
            assert ours.statistic == pytest.approx(ref.statistic, abs=1e-12)
            assert ours.p_value == pytest.approx(ref.pvalue, rel=1e-9, abs=1e-15)

    @pytest.mark.parametrize("alternative", ["two-sided", "less", "greater"])
    @pytest.mark.parametrize("kind", ["normal", "tie_heavy", "mixed", "sorted"])
    def test_against_scipy_asymptotic(self, rng, alternative, kind):
        x, y = random_pair(rng, 120, kind)
        ours = kendall_test(validate_sample(x, y), alternative, "normal")
        ref = stats.kendalltau(x, y, method="asymptotic", alternative=alternative)
        assert ours.p_value == pytest.approx(ref.pvalue, rel=1e-9, abs=1e-15)

    def test_continuity_flag_changes_normal_only(self, rng):
        x, y = random_pair(rng, 30, "untied")
        s = validate_sample(x, y)
        assert kendall_test(s, method="exact", continuity=True) == kendall_test(s, method="exact")
        a = kendall_test(s, "less", "normal")
        b = kendall_test(s, "less", "normal", continuity=True)
        assert a.p_value != b.p_value

    def test_convenience_wrapper(self):
        res = kendall_cor_test([1, 2, 3], [1, 2, 3], alternative="greater", method="exact")
        assert res.p_value == pytest.approx(1 / 6)
        assert res.alternative is Alternative.GREATER


def test_null_calibration_smoke():
    rng = np.random.default_rng(11)
    rejections = 0
    trials = 500
    for _ in range(trials):
        s = validate_sample(rng.standard_normal(20), rng.standard_normal(20))
        rejections += kendall_test(s).p_value < 0.05
    assert 0.02 <= rejections / trials <= 0.08
