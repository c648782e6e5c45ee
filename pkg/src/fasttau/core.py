"""Kendall's tau-b in O(n log n).

The procedure follows Knight's method:

1. sort the pairs by x, breaking ties in x by y;
2. carry y along in that order;
3. count total pairs ``m = n(n-1)/2``;
4. count pairs tied in x, in y, and in both;
5. count inversions of the rearranged y with a merge sort;
6. assemble the numerator ``c - d = m - tx - ty + txy - 2 * swaps``;
7. divide by ``sqrt((m - tx) * (m - ty))``, the product taken as an exact integer.

All pair counts are exact Python integers. The final division is the only
floating point step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from fasttau._kernels import merge_sort_inversions, sort_by_x_then_y
from fasttau.errors import DegenerateInput, LengthMismatch, NonFinite, TooShort


@dataclass(frozen=True)
class PairedSample:
    """Two equal-length vectors of finite floats, at least two pairs long.

    Build instances with :func:`validate_sample`; the arrays are read-only.
    """

    x: NDArray[np.float64]
    y: NDArray[np.float64]

    @property
    def n(self) -> int:
        return int(self.x.shape[0])

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class TieCounts:
    """Exact counts of tied pairs.

    ``x_groups`` and ``y_groups`` hold the sizes of the tie groups (size >= 2)
    in each margin; the normal approximation needs them for its variance.
    """

    pairs_tied_x: int
    pairs_tied_y: int
    pairs_tied_both: int
    x_groups: tuple[int, ...] = field(default=(), repr=False)
    y_groups: tuple[int, ...] = field(default=(), repr=False)

    @property
    def has_ties(self) -> bool:
        return self.pairs_tied_x > 0 or self.pairs_tied_y > 0


@dataclass(frozen=True)
class TauResult:
    tau: float
    n: int
    m: int
    swaps: int
    numerator: int
    ties: TieCounts


def _as_vector(values: ArrayLike, name: str) -> NDArray[np.float64]:
    try:
        arr = np.array(values, dtype=np.float64, copy=True)
    except (TypeError, ValueError) as exc:
        raise TypeError(f"{name} must be a sequence of real numbers") from exc
    if arr.ndim != 1:
        raise TypeError(f"{name} must be one-dimensional, got shape {arr.shape}")
    return arr


def validate_sample(x: ArrayLike, y: ArrayLike) -> PairedSample:
    """Check and freeze a pair of vectors.

    Raises
    ------
    LengthMismatch
        ``len(x) != len(y)``.
    TooShort
        Fewer than two pairs.
    NonFinite
        Any NaN or infinity; reports the vector and the first offending index.
    """
    xs = _as_vector(x, "x")
    ys = _as_vector(y, "y")
    if xs.shape[0] != ys.shape[0]:
        raise LengthMismatch(xs.shape[0], ys.shape[0])
    if xs.shape[0] < 2:
        raise TooShort(int(xs.shape[0]))
    for name, arr in (("x", xs), ("y", ys)):
        bad = np.flatnonzero(~np.isfinite(arr))
        if bad.size:
            i = int(bad[0])
            raise NonFinite(name, i, float(arr[i]))
    xs.flags.writeable = False
    ys.flags.writeable = False
    return PairedSample(xs, ys)


def sort_pairs_by_x_then_y(sample: PairedSample) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Order the pairs by x, then by y within runs of equal x.

    Returns new arrays ``(x_sorted, y_rearranged)``; the sample is untouched.
    """
    return sort_by_x_then_y(sample.x, sample.y)


def _run_lengths(change: NDArray[np.bool_]) -> NDArray[np.int64]:
    # change[i] marks a boundary between positions i and i + 1
    edges = np.concatenate(([0], np.flatnonzero(change) + 1, [change.shape[0] + 1]))
    return np.diff(edges)


def tie_group_sizes(sorted_values: NDArray[np.float64]) -> NDArray[np.int64]:
    """Sizes of the maximal runs of equal values that have length >= 2."""
    v = np.asarray(sorted_values)
    if v.shape[0] < 2:
        return np.empty(0, dtype=np.int64)
    g = _run_lengths(v[1:] != v[:-1])
    return g[g > 1]


def _pairs_in_groups(groups: NDArray[np.int64]) -> int:
    # each term and the total stay below n(n-1)/2, within int64 for n < 2**31
    g = np.asarray(groups, dtype=np.int64)
    return int(np.sum(g * (g - 1) // 2))


def count_tie_pairs(sorted_values: NDArray[np.float64]) -> int:
    """Number of pairs of equal values, ``sum g(g-1)/2`` over tie groups.

    The input must already be sorted; this is not checked. On unsorted input
    only adjacent equal values are grouped and the result is an undercount.
    """
    return _pairs_in_groups(tie_group_sizes(sorted_values))


def count_joint_tie_pairs(x_sorted: NDArray[np.float64], y_rearranged: NDArray[np.float64]) -> int:
    """Number of pairs tied in both x and y.

    Expects the output of :func:`sort_pairs_by_x_then_y`, where identical
    (x, y) pairs are adjacent.
    """
    if x_sorted.shape[0] < 2:
        return 0
    change = (x_sorted[1:] != x_sorted[:-1]) | (y_rearranged[1:] != y_rearranged[:-1])
    g = _run_lengths(change)
    return _pairs_in_groups(g[g > 1])


def merge_sort_count_swaps(y: NDArray[np.float64]) -> tuple[int, NDArray[np.float64]]:
    """Count inversions (strict, ties excluded) and return ``(swaps, y_sorted)``."""
    swaps, y_sorted = merge_sort_inversions(np.ascontiguousarray(y, dtype=np.float64))
    return int(swaps), y_sorted


def kendall_tau(sample: PairedSample) -> TauResult:
    """Kendall's tau-b of a validated sample.

    Raises :class:`DegenerateInput` when x or y is constant.
    """
    n = sample.n
    x_sorted, y_rearranged = sort_pairs_by_x_then_y(sample)
    m = n * (n - 1) // 2

    x_groups = tie_group_sizes(x_sorted)
    tied_x = _pairs_in_groups(x_groups)
    tied_both = count_joint_tie_pairs(x_sorted, y_rearranged)
    swaps, y_sorted = merge_sort_count_swaps(y_rearranged)
    y_groups = tie_group_sizes(y_sorted)
    tied_y = _pairs_in_groups(y_groups)

    if tied_x == m or tied_y == m:
        which = "both" if tied_x == tied_y == m else ("x" if tied_x == m else "y")
        raise DegenerateInput(f"tau is undefined: {which} is constant", vector=which)

    numerator = m - tied_x - tied_y + tied_both - 2 * swaps
    tau = numerator / math.sqrt((m - tied_x) * (m - tied_y))
    tau = min(1.0, max(-1.0, tau))
    ties = TieCounts(
        tied_x,
        tied_y,
        tied_both,
        tuple(x_groups.tolist()),
        tuple(y_groups.tolist()),
    )
    return TauResult(tau=tau, n=n, m=m, swaps=swaps, numerator=numerator, ties=ties)


def kendall_cor(x: ArrayLike, y: ArrayLike) -> float:
    """Kendall's tau-b of two vectors."""
    return kendall_tau(validate_sample(x, y)).tau
