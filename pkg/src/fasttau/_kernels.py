"""Compiled inner loops for the O(n log n) path."""

import numpy as np
from numba import njit

# Runs shorter than this are insertion sorted before merging. Each shift in
# insertion sort passes exactly one strictly greater element, so the count of
# shifts is the inversion count of the run.
_RUN = 24


@njit(cache=True, nogil=True)
def merge_sort_inversions(values):
    """Sort a copy of ``values`` and count pairs i < j with values[i] > values[j].

    Equal values are never counted. Returns ``(swaps, sorted_copy)``.
    """
    n = values.shape[0]
    a = values.copy()
    buf = np.empty_like(a)
    swaps = np.int64(0)

    for lo in range(0, n, _RUN):
        hi = min(lo + _RUN, n)
        for i in range(lo + 1, hi):
            key = a[i]
            j = i
            while j > lo and a[j - 1] > key:
                a[j] = a[j - 1]
                j -= 1
            swaps += i - j
            a[j] = key

    width = _RUN
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i = lo
            j = mid
            k = lo
            while i < mid and j < hi:
                if a[j] < a[i]:
                    buf[k] = a[j]
                    swaps += mid - i
                    j += 1
                else:
                    buf[k] = a[i]
                    i += 1
                k += 1
            while i < mid:
                buf[k] = a[i]
                i += 1
                k += 1
            while j < hi:
                buf[k] = a[j]
                j += 1
                k += 1
        a, buf = buf, a
        width *= 2

    return swaps, a


@njit(cache=True, nogil=True)
def sort_by_x_then_y(x, y):
    """Rearrange (x, y) so x is nondecreasing and y is nondecreasing within equal x.

    Pairs with identical (x, y) are indistinguishable, so the order need not be
    stable.
    """
    n = x.shape[0]
    perm = np.argsort(x)
    xs = x[perm]
    ys = y[perm]
    lo = 0
    while lo < n:
        hi = lo + 1
        while hi < n and xs[hi] == xs[lo]:
            hi += 1
        if hi - lo > 1:
            ys[lo:hi] = np.sort(ys[lo:hi])
        lo = hi
    return xs, ys
