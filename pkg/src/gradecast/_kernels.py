"""Hot kernel for the split search: scan one feature for its best cut.

Two interchangeable implementations exist: a numba ``@njit`` kernel and a
vectorized numpy fallback. Selection order: the ``GRADECAST_NO_NUMBA``
environment variable forces the numpy path; otherwise numba is used when
importable. Both paths sort with mergesort and accumulate prefix sums
left-to-right, so their results are bit-identical and the documented
tie-break (first boundary at equal gain, i.e. the lowest threshold) is
stable regardless of which path runs.

A candidate boundary after the i-th sorted sample is valid when the two
neighbouring values differ and both sides keep at least ``min_split``
samples. Its gain is

    sd(T) - (n_L/n) * sd(L) - (n_R/n) * sd(R)

with population standard deviations. Since sd(T) is constant per node it
is passed in and does not influence which boundary wins.
"""

from __future__ import annotations

import os

import numpy as np


def _scan_feature_py(values, targets, min_split, sd_parent):
    n = values.shape[0]
    order = np.argsort(values, kind="mergesort")
    best_gain = -1.0
    best_threshold = 0.0
    found = False
    if n < 2 * min_split:
        return best_gain, best_threshold, found

    v = values[order]
    t = targets[order]
    csum = np.empty(n, dtype=np.float64)
    csq = np.empty(n, dtype=np.float64)
    acc = 0.0
    acc_sq = 0.0
    for i in range(n):
        acc += t[i]
        acc_sq += t[i] * t[i]
        csum[i] = acc
        csq[i] = acc_sq
    total = csum[n - 1]
    total_sq = csq[n - 1]

    for i in range(min_split, n - min_split + 1):
        if v[i] <= v[i - 1]:
            continue
        nl = float(i)
        nr = float(n - i)
        sum_l = csum[i - 1]
        ssq_l = csq[i - 1]
        var_l = ssq_l / nl - (sum_l / nl) * (sum_l / nl)
        if var_l < 0.0:
            var_l = 0.0
        sum_r = total - sum_l
        ssq_r = total_sq - ssq_l
        var_r = ssq_r / nr - (sum_r / nr) * (sum_r / nr)
        if var_r < 0.0:
            var_r = 0.0
        gain = sd_parent - (nl / n) * np.sqrt(var_l) - (nr / n) * np.sqrt(var_r)
        if gain > best_gain:
            best_gain = gain
            best_threshold = (v[i - 1] + v[i]) / 2.0
            found = True
    return best_gain, best_threshold, found


def scan_feature_numpy(values, targets, min_split, sd_parent):
    """Vectorized fallback; same arithmetic order as the jitted kernel."""
    n = values.shape[0]
    if n < 2 * min_split:
        return -1.0, 0.0, False
    order = np.argsort(values, kind="mergesort")
    v = values[order]
    t = targets[order]
    csum = np.cumsum(t)
    csq = np.cumsum(t * t)
    total = csum[-1]
    total_sq = csq[-1]

    left = np.arange(min_split, n - min_split + 1)
    valid = v[left] > v[left - 1]
    if not valid.any():
        return -1.0, 0.0, False
    left = left[valid]
    nl = left.astype(np.float64)
    nr = (n - left).astype(np.float64)
    sum_l = csum[left - 1]
    ssq_l = csq[left - 1]
    var_l = np.maximum(ssq_l / nl - (sum_l / nl) * (sum_l / nl), 0.0)
    sum_r = total - sum_l
    ssq_r = total_sq - ssq_l
    var_r = np.maximum(ssq_r / nr - (sum_r / nr) * (sum_r / nr), 0.0)
    gains = sd_parent - (nl / n) * np.sqrt(var_l) - (nr / n) * np.sqrt(var_r)

    best = int(np.argmax(gains))  # first maximum = lowest threshold
    i = int(left[best])
    return float(gains[best]), float((v[i - 1] + v[i]) / 2.0), True


def _make_numba_kernel():
    from numba import njit

    return njit(cache=True)(_scan_feature_py)


_DISABLED = bool(os.environ.get("GRADECAST_NO_NUMBA"))
USING_NUMBA = False
scan_feature_numba = None

if not _DISABLED:
    try:
        scan_feature_numba = _make_numba_kernel()
        USING_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        pass


def scan_feature(values: np.ndarray, targets: np.ndarray, min_split: int,
                 sd_parent: float) -> tuple[float, float, bool]:
    """Best (gain, threshold, found) cut for one feature column."""
    values = np.ascontiguousarray(values, dtype=np.float64)
    targets = np.ascontiguousarray(targets, dtype=np.float64)
    if USING_NUMBA:
        return scan_feature_numba(values, targets, min_split, sd_parent)
    return scan_feature_numpy(values, targets, min_split, sd_parent)
