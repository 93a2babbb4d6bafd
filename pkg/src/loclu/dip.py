"""Hartigans' dip test of unimodality.

The statistic is computed with the linear-time convex minorant / concave
majorant sweep of Hartigan & Hartigan (1985) on the ascending-sorted sample.
All internal arithmetic is done in "count units" (``2 * n * dip``) and divided
out once at the end.

The reported statistic lies in ``[1 / (2n), 0.25)``.  Samples with fewer than
four points or no spread get the minimum ``1 / (2n)``, a p-value of 1 and the
modal interval ``[min, max]``.

p-values are obtained by simulation against the uniform null.  Replicate ``q``
draws its sample from a generator seeded with ``(rng_seed, q)``, so the result
does not depend on the order in which replicates are evaluated.
"""

from dataclasses import dataclass
from functools import lru_cache

import numba
import numpy as np

from .errors import InvalidConfigError, InvalidInputError

MIN_SAMPLE_SIZE = 4
# below this (relative to the largest magnitude) values are flushed to zero;
# remaining gaps are then wide enough that count/gap slopes cannot overflow
_FLUSH = 1e-280


@dataclass(frozen=True)
class DipConfig:
    """Parameters of the simulated dip test.

    Attributes
    ----------
    alpha : float
        Significance level; a sample is called unimodal when ``p > alpha``.
    bootstrap_b : int
        Number of uniform replicates used for the p-value.
    rng_seed : int
        Seed of the replicate streams (unsigned 64-bit).
    """

    alpha: float = 0.05
    bootstrap_b: int = 1000
    rng_seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise InvalidConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if int(self.bootstrap_b) != self.bootstrap_b or self.bootstrap_b < 1:
            raise InvalidConfigError(f"bootstrap_b must be a positive integer, got {self.bootstrap_b}")
        if int(self.rng_seed) != self.rng_seed or not 0 <= self.rng_seed < 2**64:
            raise InvalidConfigError(f"rng_seed must be an unsigned 64-bit integer, got {self.rng_seed}")


@dataclass(frozen=True)
class DipResult:
    dip: float
    modal_low: float
    modal_high: float
    modal_index_low: int
    modal_index_high: int
    p_value: float | None = None

    def is_unimodal(self, alpha=0.05):
        """Verdict at level ``alpha``; requires a p-value."""
        if self.p_value is None:
            raise ValueError("result carries no p-value")
        return self.p_value > alpha

    def to_dict(self):
        return {
            "dip": self.dip,
            "p_value": self.p_value,
            "modal_low": self.modal_low,
            "modal_high": self.modal_high,
            "modal_index_low": self.modal_index_low,
            "modal_index_high": self.modal_index_high,
        }


def _as_sample(values):
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1:
        x = x.ravel()
    if x.size == 0:
        raise InvalidInputError("dip requires at least one observation")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("sample contains NaN or infinite values")
    return x


def is_degenerate(sorted_x):
    """True when the dip falls back to its minimum convention value."""
    return sorted_x.size < MIN_SAMPLE_SIZE or sorted_x[0] == sorted_x[-1]


@numba.njit(cache=True, error_model="numpy")
def _dip_sorted(x):
    """Return ``(2 * n * dip, low, high)`` for a sorted sample with spread.

    ``low``/``high`` are indexes of the modal interval endpoints.
    """
    n = x.shape[0]
    low = 0
    high = n - 1
    dip = 1.0

    # mn[j]: predecessor of j on the convex minorant of points 0..j
    mn = np.empty(n, dtype=np.int64)
    mn[0] = 0
    for j in range(1, n):
        mn[j] = j - 1
        while True:
            mnj = mn[j]
            mnmnj = mn[mnj]
            if mnj == 0 or (x[j] - x[mnj]) * (mnj - mnmnj) < (x[mnj] - x[mnmnj]) * (j - mnj):
                break
            mn[j] = mnmnj

    # mj[k]: successor of k on the concave majorant of points k..n-1
    mj = np.empty(n, dtype=np.int64)
    mj[n - 1] = n - 1
    for k in range(n - 2, -1, -1):
        mj[k] = k + 1
        while True:
            mjk = mj[k]
            mjmjk = mj[mjk]
            if mjk == n - 1 or (x[k] - x[mjk]) * (mjk - mjmjk) < (x[mjk] - x[mjmjk]) * (k - mjk):
                break
            mj[k] = mjmjk

    gcm = np.empty(n + 1, dtype=np.int64)
    lcm = np.empty(n + 1, dtype=np.int64)
    while True:
        # minorant vertices, walking down from high to low
        gcm[0] = high
        i = 0
        while gcm[i] > low:
            gcm[i + 1] = mn[gcm[i]]
            i += 1
        ig = i
        l_gcm = i
        ix = ig - 1

        # majorant vertices, walking up from low to high
        lcm[0] = low
        i = 0
        while lcm[i] < high:
            lcm[i + 1] = mj[lcm[i]]
            i += 1
        ih = i
        l_lcm = i
        iv = 1

        # largest vertical gap between the two hulls inside [low, high]
        d = 0.0
        if l_gcm != 1 or l_lcm != 1:
            while True:
                gcmix = gcm[ix]
                lcmiv = lcm[iv]
                if gcmix > lcmiv:
                    gcmil = gcm[ix + 1]
                    dx = (lcmiv - gcmil + 1) - (x[lcmiv] - x[gcmil]) * (gcmix - gcmil) / (x[gcmix] - x[gcmil])
                    iv += 1
                    if dx >= d:
                        d = dx
                        ig = ix + 1
                        ih = iv - 1
                else:
                    lcmivl = lcm[iv - 1]
                    dx = (x[gcmix] - x[lcmivl]) * (lcmiv - lcmivl) / (x[lcmiv] - x[lcmivl]) - (gcmix - lcmivl - 1)
                    ix -= 1
                    if dx >= d:
                        d = dx
                        ig = ix + 1
                        ih = iv
                if ix < 0:
                    ix = 0
                if iv > l_lcm:
                    iv = l_lcm
                if gcm[ix] == lcm[iv]:
                    break

        if d < dip:
            break

        # deviation of the sample from the minorant left of the new interval
        dip_l = 0.0
        for j in range(ig, l_gcm):
            max_t = 1.0
            jb = gcm[j + 1]
            je = gcm[j]
            if je - jb > 1 and x[je] != x[jb]:
                c = (je - jb) / (x[je] - x[jb])
                for jj in range(jb, je + 1):
                    t = (jj - jb + 1) - (x[jj] - x[jb]) * c
                    if max_t < t:
                        max_t = t
            if dip_l < max_t:
                dip_l = max_t

        # and from the majorant right of it
        dip_u = 0.0
        for j in range(ih, l_lcm):
            max_t = 1.0
            jb = lcm[j]
            je = lcm[j + 1]
            if je - jb > 1 and x[je] != x[jb]:
                c = (je - jb) / (x[je] - x[jb])
                for jj in range(jb, je + 1):
                    t = (x[jj] - x[jb]) * c - (jj - jb - 1)
                    if max_t < t:
                        max_t = t
            if dip_u < max_t:
                dip_u = max_t

        dip_new = dip_u if dip_u > dip_l else dip_l
        if dip < dip_new:
            dip = dip_new

        if low == gcm[ig] and high == lcm[ih]:
            break
        low = gcm[ig]
        high = lcm[ih]

    return dip, low, high


def _rescale(x):
    """Exact power-of-two rescaling of a sorted sample to magnitude about 1.

    Scaling by ``2**k`` commutes with every operation of the sweep, so the
    statistic is unchanged; it only keeps slopes finite for very small or very
    large data.  Values below ``_FLUSH`` after rescaling are set to zero
    (relative resolution beyond that is treated as a tie).
    """
    top = max(abs(x[0]), abs(x[-1]))
    if top == 0.0:
        return x
    _, e = np.frexp(top)
    y = np.ldexp(x, -int(e))
    y[np.abs(y) < _FLUSH] = 0.0
    return y


def _dip_of_sorted(x):
    n = x.size
    x = _rescale(x)
    if is_degenerate(x):
        return 1.0 / (2 * n), 0, n - 1
    twice_n_dip, low, high = _dip_sorted(x)
    return twice_n_dip / (2 * n), int(low), int(high)


def dip_statistic(sample):
    """Dip statistic and modal interval of a univariate sample.

    Parameters
    ----------
    sample : array_like
        Finite real values in any order; ties are allowed.

    Returns
    -------
    DipResult
        With ``p_value`` left as ``None``.
    """
    x = np.sort(_as_sample(sample))
    dip, low, high = _dip_of_sorted(x)
    return DipResult(
        dip=dip,
        modal_low=float(x[low]),
        modal_high=float(x[high]),
        modal_index_low=low,
        modal_index_high=high,
    )


def dip_value(sample):
    """Shorthand for ``dip_statistic(sample).dip``."""
    return dip_statistic(sample).dip


@lru_cache(maxsize=2048)
def null_dips(n, bootstrap_b, rng_seed):
    """Sorted dips of ``bootstrap_b`` uniform samples of size ``n``.

    Sorted uniform order statistics are generated as normalised partial sums of
    exponential spacings; the dip is invariant under positive affine maps, so
    the normalisation is skipped.
    """
    out = np.empty(bootstrap_b, dtype=np.float64)
    if n < MIN_SAMPLE_SIZE:
        out.fill(1.0 / (2 * n))
        return out
    for q in range(bootstrap_b):
        rng = np.random.default_rng([rng_seed, q])
        x = np.cumsum(rng.standard_exponential(n))
        out[q] = _dip_sorted(x)[0] / (2 * n)
    out.sort()
    out.flags.writeable = False
    return out


def dip_pvalue(dip, n, cfg=None):
    """Fraction of uniform replicates of size ``n`` whose dip is at least ``dip``."""
    cfg = DipConfig() if cfg is None else cfg
    if n < 1:
        raise InvalidInputError("sample size must be positive")
    if cfg.bootstrap_b < 1:
        raise InvalidConfigError("bootstrap_b must be positive")
    reps = null_dips(int(n), int(cfg.bootstrap_b), int(cfg.rng_seed))
    below = np.searchsorted(reps, dip, side="left")
    return float(reps.size - below) / reps.size


def dip_test(sample, cfg=None):
    """Dip statistic, modal interval and simulated p-value.

    The sample is called unimodal when ``p_value > cfg.alpha``.
    """
    cfg = DipConfig() if cfg is None else cfg
    x = np.sort(_as_sample(sample))
    dip, low, high = _dip_of_sorted(x)
    if is_degenerate(x):
        p = 1.0
    else:
        p = dip_pvalue(dip, x.size, cfg)
    return DipResult(
        dip=dip,
        modal_low=float(x[low]),
        modal_high=float(x[high]),
        modal_index_low=low,
        modal_index_high=high,
        p_value=p,
    )


