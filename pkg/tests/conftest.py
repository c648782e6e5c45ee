import itertools

import numpy as np
import pytest


def classify_pairs(x, y):
    """Plain-Python pair classification over i < j: (c, d, ties_x_only, ties_y_only, both)."""
    c = d = e = f = both = 0
    for i, j in itertools.combinations(range(len(x)), 2):
        tx = x[i] == x[j]
        ty = y[i] == y[j]
        if tx and ty:
            both += 1
        elif tx:
            e += 1
        elif ty:
            f += 1
        elif (x[i] < x[j]) == (y[i] < y[j]):
            c += 1
        else:
            d += 1
    return c, d, e, f, both


def count_inversions(values):
    return sum(1 for i, j in itertools.combinations(range(len(values)), 2) if values[i] > values[j])


def equal_pairs(values):
    return sum(1 for i, j in itertools.combinations(range(len(values)), 2) if values[i] == values[j])


def random_pair(rng, n, kind):
    """Draw (x, y) of length n with a given tie structure."""
    if kind == "untied":
        return rng.permutation(n).astype(float), rng.permutation(n).astype(float)
    if kind == "normal":
        return rng.standard_normal(n), rng.standard_normal(n)
    if kind == "tie_heavy":
        return rng.integers(0, 5, n).astype(float), rng.integers(0, 5, n).astype(float)
    if kind == "sorted":
        x = np.sort(rng.integers(0, max(2, n // 2), n)).astype(float)
        return x, x + rng.integers(0, 3, n)
    if kind == "reversed":
        x = np.sort(rng.standard_normal(n))
        return x, x[::-1].copy()
    if kind == "mixed":
        return rng.standard_normal(n).round(1), rng.integers(0, 7, n).astype(float)
    raise ValueError(kind)


KINDS = ("untied", "normal", "tie_heavy", "sorted", "reversed", "mixed")


def is_degenerate(x, y):
    return np.all(x == x[0]) or np.all(y == y[0])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
