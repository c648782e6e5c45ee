"""Pairwise tau matrices over many columns."""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from fasttau.core import kendall_tau, validate_sample
from fasttau.errors import DegenerateInput, UsageError, ValidationError

log = logging.getLogger("fasttau")


def _cell(a, b):
    # pairwise-complete observations; NaN marks a dropped missing cell
    keep = ~(np.isnan(a) | np.isnan(b))
    return kendall_tau(validate_sample(a[keep], b[keep])).tau


def tau_matrix(columns, names=None, workers=None):
    """Symmetric matrix of tau for every pair of columns, unit diagonal.

    Cells whose pair is degenerate (a constant column) or has fewer than two
    complete observations are NaN and produce a logged warning. Returns
    ``(matrix, problems)`` where ``problems`` lists ``(i, j, message)``.

    The kernels release the GIL, so ``workers > 1`` computes cells in parallel.
    """
    k = len(columns)
    if k < 2:
        raise UsageError(f"need at least 2 numeric columns, got {k}")
    names = list(names) if names is not None else [str(i + 1) for i in range(k)]
    cols = [np.array(c, dtype=np.float64) for c in columns]
    for c in cols:
        c.flags.writeable = False

    pairs = list(itertools.combinations(range(k), 2))

    def work(ij):
        i, j = ij
        try:
            return _cell(cols[i], cols[j]), None
        except (DegenerateInput, ValidationError) as exc:
            return float("nan"), str(exc)

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(work, pairs))
    else:
        results = [work(ij) for ij in pairs]

    out = np.eye(k)
    problems = []
    for (i, j), (tau, err) in zip(pairs, results):
        out[i, j] = out[j, i] = tau
        if err is not None:
            problems.append((i, j, err))
            log.warning("tau(%s, %s) set to NA: %s", names[i], names[j], err)
    return out, problems
