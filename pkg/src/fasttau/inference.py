"""Significance tests for Kendall's tau.

Two routes to a p-value:

* exact, for untied samples: the permutation distribution of ``c - d``
  counted through the number of inversions, ``w(n, s) = sum_{j<n} w(n-1, s-j)``;
* normal approximation with the tie-corrected null variance of ``c - d``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate

from fasttau.core import PairedSample, TauResult, kendall_tau, validate_sample
from fasttau.errors import DegenerateInput, ExactNotApplicable

EXACT_MAX_N = 50


class Alternative(str, enum.Enum):
    TWO_SIDED = "two_sided"
    LESS = "less"
    GREATER = "greater"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "_").replace(".", "_")
        try:
            return cls(key)
        except ValueError:
            raise ValueError(
                f"alternative must be one of two-sided, less, greater; got {value!r}"
            ) from None

    @property
    def text(self):
        relation = {
            Alternative.TWO_SIDED: "not equal to",
            Alternative.LESS: "less than",
            Alternative.GREATER: "greater than",
        }[self]
        return f"alternative hypothesis: true tau is {relation} 0"


class Method(str, enum.Enum):
    AUTO = "auto"
    EXACT = "exact"
    NORMAL = "normal_approx"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        if key in ("normal", "approx", "normal-approx"):
            key = "normal_approx"
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"method must be one of auto, exact, normal; got {value!r}") from None


@dataclass(frozen=True)
class TestResult:
    statistic: float
    p_value: float
    alternative: Alternative
    method: Method
    n: int

    __test__ = False  # not a pytest class

    @property
    def alternative_text(self):
        return self.alternative.text


@lru_cache(maxsize=None)
def _inversion_cumulative(n):
    """Cumulative counts of permutations of n items with at most s inversions.

    Entry ``s`` of the result is ``sum_{t<=s} w(n, t)``, exact integers.
    """
    w = [1]
    for size in range(2, n + 1):
        prefix = [0, *accumulate(w)]
        top = len(w) - 1 + size - 1
        w = [prefix[min(s, len(w) - 1) + 1] - prefix[max(0, s - size + 1)] for s in range(top + 1)]
    return tuple(accumulate(w))


def _log_factorial(n):
    return math.lgamma(n + 1)


def exact_null_cdf(k, n):
    """``P(C - D <= k)`` for n untied pairs under random pairing.

    Uses ``C - D = m - 2 * inversions``. The count of qualifying permutations
    is exact; normalisation by n! happens in log space.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    m = n * (n - 1) // 2
    # C - D <= k  <=>  inversions >= ceil((m - k) / 2)
    s0 = -((k - m) // 2)
    if s0 <= 0:
        return 1.0
    if s0 > m:
        return 0.0
    cum = _inversion_cumulative(n)
    count = cum[m] - cum[s0 - 1]
    if count == 0:
        return 0.0
    return min(1.0, math.exp(math.log(count) - _log_factorial(n)))


def null_variance(result):
    """Null variance of ``c - d`` with the usual tie corrections."""
    n = result.n
    t = result.ties.x_groups
    u = result.ties.y_groups
    v0 = n * (n - 1) * (2 * n + 5)
    vt = sum(g * (g - 1) * (2 * g + 5) for g in t)
    vu = sum(g * (g - 1) * (2 * g + 5) for g in u)
    v1 = sum(g * (g - 1) for g in t) * sum(g * (g - 1) for g in u) / (2 * n * (n - 1))
    v2 = 0.0
    if n > 2:
        v2 = (
            sum(g * (g - 1) * (g - 2) for g in t)
            * sum(g * (g - 1) * (g - 2) for g in u)
            / (9 * n * (n - 1) * (n - 2))
        )
    return (v0 - vt - vu) / 18 + v1 + v2


def tau_normal_statistic(result, continuity=False):
    """z-score of the numerator ``c - d``.

    With ``continuity=True`` the numerator is moved one unit towards zero
    before standardising.
    """
    v = null_variance(result)
    if not v > 0:
        raise DegenerateInput("null variance of c - d is zero")
    s = result.numerator
    if continuity and s != 0:
        s = s - 1 if s > 0 else s + 1
    return s / math.sqrt(v)


def _normal_cdf(z):
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def _exact_p_values(result):
    p_less = exact_null_cdf(result.numerator, result.n)
    # null distribution is symmetric: P(S >= k) = P(S <= -k)
    p_greater = exact_null_cdf(-result.numerator, result.n)
    return p_less, p_greater, min(1.0, 2.0 * min(p_less, p_greater))


def _normal_p_values(result, continuity):
    z = tau_normal_statistic(result, continuity)
    p_less = _normal_cdf(z)
    p_greater = _normal_cdf(-z)
    p_two = min(1.0, math.erfc(abs(z) / math.sqrt(2.0)))
    return p_less, p_greater, p_two


def choose_method(result):
    if result.n < EXACT_MAX_N and not result.ties.has_ties:
        return Method.EXACT
    return Method.NORMAL


def kendall_test(sample, alternative=Alternative.TWO_SIDED, method=Method.AUTO, continuity=False):
    """Test whether tau differs from zero.

    Parameters
    ----------
    sample : PairedSample
        Validated, non-degenerate data.
    alternative : Alternative or str
        ``two_sided`` (default), ``less`` or ``greater``.
    method : Method or str
        ``auto`` uses the exact distribution when n < 50 and neither vector has
        ties, otherwise the normal approximation.
    continuity : bool
        Continuity correction for the normal approximation only.

    Returns
    -------
    TestResult
        ``statistic`` is tau itself.
    """
    alternative = Alternative.parse(alternative)
    method = Method.parse(method)
    result = kendall_tau(sample)
    return kendall_test_from_result(result, alternative, method, continuity)


def kendall_test_from_result(result: TauResult, alternative, method=Method.AUTO, continuity=False):
    """Same as :func:`kendall_test` for an already computed :class:`TauResult`."""
    alternative = Alternative.parse(alternative)
    method = Method.parse(method)
    if method is Method.AUTO:
        method = choose_method(result)
    if method is Method.EXACT:
        if result.ties.has_ties:
            raise ExactNotApplicable(
                "exact test requires untied data; use the normal approximation"
            )
        p_less, p_greater, p_two = _exact_p_values(result)
    else:
        p_less, p_greater, p_two = _normal_p_values(result, continuity)
    p = {
        Alternative.LESS: p_less,
        Alternative.GREATER: p_greater,
        Alternative.TWO_SIDED: p_two,
    }[alternative]
    return TestResult(result.tau, p, alternative, method, result.n)


def kendall_cor_test(x, y, alternative="two_sided", method="auto", continuity=False):
    """Convenience wrapper: validate ``x`` and ``y`` and run :func:`kendall_test`."""
    sample: PairedSample = validate_sample(x, y)
    return kendall_test(sample, alternative, method, continuity)
