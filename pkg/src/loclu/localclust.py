"""Recursive dip-based shrinking of a candidate set around a seed vertex."""

import logging
from dataclasses import dataclass, field

import numpy as np

from .dip import DipConfig, dip_test
from .errors import InvalidInputError

log = logging.getLogger(__name__)


@dataclass
class CandidateSet:
    """Ordered vertex ids ``members`` that always contain ``seed_id``."""

    members: np.ndarray
    seed_id: int
    # one entry per dip evaluated while shrinking: (size, dip, p_value)
    trace: list = field(default_factory=list)

    def __post_init__(self):
        m = np.asarray(self.members, dtype=np.int64)
        if m.ndim != 1 or m.size == 0:
            raise InvalidInputError("candidate set must be a non-empty vector of vertex ids")
        if np.unique(m).size != m.size:
            raise InvalidInputError("candidate set contains duplicates")
        if not np.any(m == self.seed_id):
            raise InvalidInputError(f"seed {self.seed_id} is not a member of the candidate set")
        self.members = m

    def __len__(self):
        return int(self.members.size)

    def __contains__(self, v):
        return bool(np.any(self.members == v))


def local_clustering(candidates, X, attr, cfg=None):
    """Shrink ``candidates`` until column ``attr`` is unimodal on it.

    Each pass dips over ``X[members, attr]``.  A unimodal verdict
    (``p > alpha``) returns the current set.  Otherwise the set is cut to the
    members strictly left of the modal interval, strictly right of it, or
    inside it (inclusive), whichever holds the seed's value.  A cut that
    removes nothing ends the loop as well.

    Parameters
    ----------
    candidates : CandidateSet
    X : ndarray of shape (n, d)
    attr : int
        Column of ``X`` to dip over.
    cfg : DipConfig, optional

    Returns
    -------
    CandidateSet
        A new set; ``trace`` lists every dip that was computed.
    """
    cfg = DipConfig() if cfg is None else cfg
    X = np.asarray(X)
    if X.ndim != 2:
        raise InvalidInputError("attribute matrix must be two-dimensional")
    if not 0 <= attr < X.shape[1]:
        raise InvalidInputError(f"attribute index {attr} out of range 0..{X.shape[1] - 1}")
    seed = candidates.seed_id
    if not 0 <= seed < X.shape[0]:
        raise InvalidInputError(f"seed {seed} outside 0..{X.shape[0] - 1}")
    members = candidates.members
    if members.min() < 0 or members.max() >= X.shape[0]:
        raise InvalidInputError("candidate ids outside the attribute matrix")
    column = X[:, attr]
    seed_value = column[seed]
    trace = list(candidates.trace)

    while True:
        x = column[members]
        res = dip_test(x, cfg)
        trace.append((int(members.size), res.dip, res.p_value))
        if res.p_value > cfg.alpha:
            break
        if seed_value < res.modal_low:
            keep = x < res.modal_low
        elif seed_value > res.modal_high:
            keep = x > res.modal_high
        else:
            keep = (x >= res.modal_low) & (x <= res.modal_high)
        if keep.all():
            log.debug("shrink stalled at %d members on attribute %d", members.size, attr)
            break
        members = members[keep]

    return CandidateSet(members=members, seed_id=seed, trace=trace)
