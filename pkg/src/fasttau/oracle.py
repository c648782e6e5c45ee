"""Quadratic reference implementation of Kendall's tau-b.

Every pair of observations is classified directly from the indicator
definitions. Nothing here is shared with :mod:`fasttau.core`; keep it that way,
the whole point is an independent second route to the same numbers.

The defining sums run over ordered pairs ``(i, j), j != i``, so each unordered
pair is seen twice. :func:`ordered_pair_counts` returns those raw sums and
:func:`brute_force_counts` halves them. The tau ratio is the same either way.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from fasttau.errors import DegenerateInput, NTooLarge

MAX_ENUMERATION_N = 8

# Elements per block of the pairwise comparison matrix.
_BLOCK_ELEMENTS = 1 << 21


@dataclass(frozen=True)
class PairCounts:
    concordant: int
    discordant: int
    ties_x_only: int
    ties_y_only: int
    ties_both: int
    total_pairs: int

    def __post_init__(self):
        parts = (
            self.concordant + self.discordant + self.ties_x_only + self.ties_y_only + self.ties_both
        )
        if parts != self.total_pairs:
            raise AssertionError(f"pair classes sum to {parts}, expected {self.total_pairs}")


def ordered_pair_counts(sample):
    """Raw indicator sums over ordered pairs (i, j), j != i.

    Concordance is decided on the signs of the differences rather than their
    product, which avoids overflow to inf (or inf * 0) for huge magnitudes.
    """
    x = np.asarray(sample.x, dtype=np.float64)
    y = np.asarray(sample.y, dtype=np.float64)
    n = x.shape[0]
    rows = max(1, _BLOCK_ELEMENTS // n)
    c = d = e = f = both = 0
    for lo in range(0, n, rows):
        hi = min(lo + rows, n)
        with np.errstate(over="ignore"):
            sx = np.sign(x[lo:hi, None] - x[None, :])
            sy = np.sign(y[lo:hi, None] - y[None, :])
        prod = sx * sy
        tx = sx == 0
        ty = sy == 0
        c += int(np.count_nonzero(prod > 0))
        d += int(np.count_nonzero(prod < 0))
        e += int(np.count_nonzero(tx & ~ty))
        f += int(np.count_nonzero(~tx & ty))
        # the diagonal i == j is tied in both and is not a pair
        both += int(np.count_nonzero(tx & ty)) - (hi - lo)
    return PairCounts(c, d, e, f, both, n * (n - 1))


def brute_force_counts(sample):
    """Concordant, discordant and tied pair counts over unordered pairs."""
    raw = ordered_pair_counts(sample)
    halves = []
    for value in (raw.concordant, raw.discordant, raw.ties_x_only, raw.ties_y_only, raw.ties_both):
        if value % 2:
            raise AssertionError("ordered pair count is odd")
        halves.append(value // 2)
    n = len(sample.x)
    return PairCounts(*halves, n * (n - 1) // 2)


def brute_force_tau(sample):
    """``(c - d) / sqrt((c + d + e)(c + d + f))`` from brute-force counts."""
    k = brute_force_counts(sample)
    cd = k.concordant + k.discordant
    denom = (cd + k.ties_x_only) * (cd + k.ties_y_only)
    if denom == 0:
        raise DegenerateInput("tau is undefined: a vector is constant")
    return (k.concordant - k.discordant) / math.sqrt(denom)


def _numerator_of_permutation(perm):
    s = 0
    for i, j in itertools.combinations(range(len(perm)), 2):
        s += 1 if perm[i] < perm[j] else -1
    return s


def enumerate_null_distribution(n):
    """Frequency of each ``c - d`` value over all n! orderings of untied y.

    x is fixed at ``1..n``; every permutation of ``1..n`` is tried as y.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if n > MAX_ENUMERATION_N:
        raise NTooLarge(f"enumeration is limited to n <= {MAX_ENUMERATION_N}, got {n}")
    table = Counter(_numerator_of_permutation(p) for p in itertools.permutations(range(n)))
    return dict(sorted(table.items()))
