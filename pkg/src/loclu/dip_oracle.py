"""Exhaustive dip computation used to cross-check the fast sweep.

Every index pair ``i <= j`` of the sorted sample is tried as the modal
interval and an explicit unimodal fit is built for it:

* left of ``x[i]``: the greatest convex minorant of the empirical CDF on
  ``x[0..i]``, lifted by ``h``;
* right of ``x[j]``: the least concave majorant on ``x[j..n-1]``, lowered by
  ``h``;
* in between: the straight segment joining the two, which must be at least as
  steep as the neighbouring hull edges (otherwise the fit is not unimodal and
  the candidate is discarded).

``2h`` is the larger of the two hull deviations.  The candidate's error is the
worst of ``2h`` and twice the deviation of the empirical CDF from the straight
segment; the dip is the smallest error over all candidates.

Work is done in count units on the points ``(x[k], k)``; the empirical CDF
jumps from ``k`` to ``k + 1`` at ``x[k]``.  Vertical hull edges (tied values)
are atoms of the fit and contribute the one-count floor.  The result is
divided by ``2n`` at the end.

The double loop over candidates is quadratic (times the length of the modal
segment), so keep ``n`` at a few hundred.
"""

import numba
import numpy as np

from .dip import MIN_SAMPLE_SIZE
from .errors import InvalidInputError

ORACLE_MAX_N = 2000
# slack on the unimodality checks; exact ties between slopes are legal fits
_TOL = 1e-12


@numba.njit(cache=True)
def _cross(x, ya, yb, yc, a, b, c):
    return (x[b] - x[a]) * (yc - ya) - (yb - ya) * (x[c] - x[a])


@numba.njit(cache=True)
def _push_lower(x, stack, size, k):
    while size >= 2:
        a = stack[size - 2]
        b = stack[size - 1]
        if _cross(x, float(a), float(b), float(k), a, b, k) <= 0.0:
            size -= 1
        else:
            break
    stack[size] = k
    return size + 1


@numba.njit(cache=True)
def _edge_dev_below(x, a, b):
    # counts above the chord a->b, measured at the CDF top of each step
    if b - a <= 1 or x[b] == x[a]:
        return 1.0
    c = (b - a) / (x[b] - x[a])
    best = 1.0
    for k in range(a, b + 1):
        t = (k - a + 1) - (x[k] - x[a]) * c
        if t > best:
            best = t
    return best


@numba.njit(cache=True)
def _edge_dev_above(x, a, b):
    if b - a <= 1 or x[b] == x[a]:
        return 1.0
    c = (b - a) / (x[b] - x[a])
    best = 1.0
    for k in range(a, b + 1):
        t = (x[k] - x[a]) * c - (k - a - 1)
        if t > best:
            best = t
    return best


@numba.njit(cache=True)
def _left_errors(x):
    n = x.shape[0]
    out = np.empty(n)
    stack = np.empty(n, dtype=np.int64)
    size = 0
    for i in range(n):
        size = _push_lower(x, stack, size, i)
        worst = 1.0
        for e in range(size - 1):
            t = _edge_dev_below(x, stack[e], stack[e + 1])
            if t > worst:
                worst = t
        out[i] = worst
    return out


@numba.njit(cache=True)
def _right_errors(x):
    n = x.shape[0]
    out = np.empty(n)
    stack = np.empty(n, dtype=np.int64)
    # majorant of x[j..n-1], grown leftwards: mirror the sample
    xm = -x[::-1].copy()
    size = 0
    for r in range(n):
        size = _push_lower(xm, stack, size, r)
        worst = 1.0
        for e in range(size - 1):
            a = n - 1 - stack[e + 1]
            b = n - 1 - stack[e]
            t = _edge_dev_above(x, a, b)
            if t > worst:
                worst = t
        out[n - 1 - r] = worst
    return out


@numba.njit(cache=True)
def _hull_slopes(x):
    """Slope of the last minorant edge into each i, first majorant edge out of each j."""
    n = x.shape[0]
    last = np.full(n, -np.inf)
    first = np.full(n, -np.inf)
    stack = np.empty(n, dtype=np.int64)
    size = 0
    for i in range(n):
        size = _push_lower(x, stack, size, i)
        if size >= 2:
            a = stack[size - 2]
            if x[i] == x[a]:
                last[i] = np.inf
            else:
                last[i] = (i - a) / (x[i] - x[a])
    xm = -x[::-1].copy()
    size = 0
    for r in range(n):
        size = _push_lower(xm, stack, size, r)
        j = n - 1 - r
        if size >= 2:
            b = n - 1 - stack[size - 2]
            if x[b] == x[j]:
                first[j] = np.inf
            else:
                first[j] = (b - j) / (x[b] - x[j])
    return last, first


@numba.njit(cache=True)
def _candidate_error(x, i, j, c, last, first):
    """Fit error of the unimodal fit whose modal segment spans x[i]..x[j].

    Returns inf when the construction is not unimodal.
    """
    n = x.shape[0]
    h = 0.5 * c
    g_lo = i + h
    g_hi = j + 1 - h
    if g_hi < g_lo - _TOL * c:
        return np.inf
    if x[i] == x[j]:
        # the modal segment collapses into a single atom
        return c
    left_atom = last[i] == np.inf
    right_atom = first[j] == np.inf
    if left_atom and right_atom:
        return np.inf
    s_mid = (g_hi - g_lo) / (x[j] - x[i])
    if not left_atom and i > 0 and s_mid < last[i] * (1.0 - _TOL):
        return np.inf
    if not right_atom and j < n - 1 and s_mid < first[j] * (1.0 - _TOL):
        return np.inf
    worst = 0.0
    for k in range(i, j + 1):
        g = g_lo + s_mid * (x[k] - x[i])
        above = (k + 1) - g
        below = g - k
        if above > worst:
            worst = above
        if below > worst:
            worst = below
    err = 2.0 * worst
    return err if err > c else c


@numba.njit(cache=True)
def _oracle_sorted(x):
    n = x.shape[0]
    left = _left_errors(x)
    right = _right_errors(x)
    last, first = _hull_slopes(x)
    best = np.inf
    for i in range(n):
        if left[i] >= best:
            continue
        for j in range(i, n):
            c = left[i] if left[i] > right[j] else right[j]
            if c >= best:
                continue
            err = _candidate_error(x, i, j, c, last, first)
            if err < best:
                best = err
    return best


def dip_oracle(sample):
    """Brute-force dip of ``sample``; agrees with :func:`loclu.dip.dip_statistic`."""
    x = np.sort(np.asarray(sample, dtype=np.float64).ravel())
    if x.size == 0 or not np.all(np.isfinite(x)):
        raise InvalidInputError("oracle needs a non-empty finite sample")
    if x.size > ORACLE_MAX_N:
        raise InvalidInputError(f"oracle is limited to n <= {ORACLE_MAX_N}")
    n = x.size
    if n < MIN_SAMPLE_SIZE or x[0] == x[-1]:
        return 1.0 / (2 * n)
    return _oracle_sorted(x) / (2 * n)
