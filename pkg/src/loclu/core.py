"""LOCLU: seed-driven local clustering over attributes and graph structure.

The graph is summarised by one early-stopped power-iteration vector which is
appended to the attribute matrix as an extra column.  The designated columns
and that embedding column are ordered by their dip over the whole vertex set,
most multimodal first, and the candidate set is shrunk around the seed one
column at a time.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from .dip import DipConfig, dip_statistic, dip_test
from .errors import InvalidInputError
from .graph import EmbeddingVector, PowerIterConfig, power_iteration
from .localclust import CandidateSet, local_clustering
from .measures import attribute_unimodality, compactness, graph_unimodality

log = logging.getLogger(__name__)

SWEEP_ALL = "all"
SWEEP_MOST_MULTIMODAL = "most-multimodal"
SWEEP_MODES = (SWEEP_ALL, SWEEP_MOST_MULTIMODAL)


@dataclass(frozen=True)
class Preference:
    """The user's query: a seed vertex and the attribute columns that matter."""

    seed_id: int
    designated: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "seed_id", int(self.seed_id))
        designated = tuple(int(a) for a in self.designated)
        if len(set(designated)) != len(designated):
            raise InvalidInputError(f"designated attributes must be distinct, got {list(designated)}")
        object.__setattr__(self, "designated", designated)

    def validate(self, n, d):
        if not 0 <= self.seed_id < n:
            raise InvalidInputError(f"seed vertex {self.seed_id} outside 0..{n - 1}")
        bad = [a for a in self.designated if not 0 <= a < d]
        if bad:
            raise InvalidInputError(f"designated attributes {bad} outside 0..{d - 1}")


@dataclass
class ClusterResult:
    """A detected local cluster with its unimodality scores.

    ``per_attribute_dips`` holds ``(column, dip, p_value)`` over all vertices
    for every swept column, in sweep order.  The embedding column is reported
    with index ``d``.  ``au`` is 0 when no attribute was designated.
    """

    members: np.ndarray
    gu: float
    au: float
    compactness: float
    embedding: EmbeddingVector
    per_attribute_dips: list = field(default_factory=list)
    sweep_order: list = field(default_factory=list)
    # sizes of the candidate set after each column of each pass
    history: list = field(default_factory=list)
    passes: int = 1

    @property
    def size(self):
        return int(self.members.size)

    def to_dict(self):
        return {
            "members": [int(v) for v in self.members],
            "size": self.size,
            "gu": self.gu,
            "au": self.au,
            "compactness": self.compactness,
            "iterations": self.embedding.iterations,
            "passes": self.passes,
            "sweep_order": [int(c) for c in self.sweep_order],
            "per_attribute_dips": [
                {"column": int(c), "dip": float(dip), "p_value": p} for c, dip, p in self.per_attribute_dips
            ],
        }


def _check_inputs(graph, X, pref):
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise InvalidInputError("attribute matrix must be two-dimensional")
    if graph.n == 0:
        raise InvalidInputError("graph has no vertices")
    if X.shape[0] != graph.n:
        raise InvalidInputError(f"attribute matrix has {X.shape[0]} rows, graph has {graph.n} vertices")
    if not np.all(np.isfinite(X)):
        raise InvalidInputError("attribute matrix contains NaN or infinite values")
    pref.validate(graph.n, X.shape[1])
    return X


def most_multimodal_attribute(X, candidates=None):
    """Column of ``X`` (or of ``candidates`` only) with the largest dip; ties go to the lower index."""
    X = np.asarray(X, dtype=np.float64)
    cols = range(X.shape[1]) if candidates is None else list(candidates)
    cols = list(cols)
    if not cols:
        raise InvalidInputError("no attribute columns to choose from")
    dips = [dip_statistic(X[:, a]).dip for a in cols]
    return cols[int(np.argmax(dips))]


def sweep_order(dips):
    """Column indexes sorted by dip, highest first; ties by ascending index.

    ``dips`` maps column index to dip.  The embedding column carries the
    largest index, so it comes last among equal dips.
    """
    return sorted(dips, key=lambda c: (-dips[c], c))


def run_loclu(graph, X, pref, picfg=None, dipcfg=None, mode=SWEEP_ALL, max_passes=None):
    """Detect the local cluster of ``pref.seed_id``.

    Parameters
    ----------
    graph : Graph
    X : ndarray of shape (n, d)
    pref : Preference
    picfg : PowerIterConfig, optional
    dipcfg : DipConfig, optional
    mode : {"all", "most-multimodal"}
        ``"all"`` sweeps every designated column; ``"most-multimodal"`` keeps
        only the designated column with the largest dip.
    max_passes : int or None
        Number of sweeps over the ordered columns.  A later pass only runs
        when the previous one shrank the set, and stops as soon as a full pass
        leaves it unchanged; at that point every swept column is unimodal on
        the result.  ``None`` repeats until that happens.

    Returns
    -------
    ClusterResult
    """
    picfg = PowerIterConfig() if picfg is None else picfg
    dipcfg = DipConfig() if dipcfg is None else dipcfg
    if mode not in SWEEP_MODES:
        raise InvalidInputError(f"unknown sweep mode {mode!r}; expected one of {SWEEP_MODES}")
    if max_passes is not None and max_passes < 1:
        raise InvalidInputError("max_passes must be at least 1")
    X = _check_inputs(graph, X, pref)
    n, d = X.shape

    designated = list(pref.designated)
    if mode == SWEEP_MOST_MULTIMODAL and len(designated) > 1:
        designated = [most_multimodal_attribute(X, designated)]

    embedding = power_iteration(graph, picfg)
    augmented = np.column_stack([X[:, designated], embedding.values]) if designated else embedding.values[:, None]
    # position in ``augmented`` -> column index in the caller's numbering (embedding is d)
    labels = designated + [d]

    initial = {}
    tested = {}
    for pos, col in enumerate(labels):
        res = dip_test(augmented[:, pos], dipcfg)
        initial[pos] = res.dip
        tested[pos] = (col, res.dip, res.p_value)
    order = sweep_order(initial)

    cand = CandidateSet(members=np.arange(n), seed_id=pref.seed_id)
    history = []
    passes = 0
    while True:
        passes += 1
        before = cand.members.size
        for pos in order:
            cand = local_clustering(cand, augmented, pos, dipcfg)
            history.append((passes, labels[pos], len(cand)))
        if cand.members.size == before:
            break
        if max_passes is not None and passes >= max_passes:
            break
        log.debug("pass %d shrank the cluster to %d members; sweeping again", passes, len(cand))

    members = np.sort(cand.members)
    gu = graph_unimodality(embedding.values, members)
    au = attribute_unimodality(X, members, designated) if designated else 0.0
    return ClusterResult(
        members=members,
        gu=gu,
        au=au,
        compactness=compactness(gu, au),
        embedding=embedding,
        per_attribute_dips=[tested[pos] for pos in order],
        sweep_order=[labels[pos] for pos in order],
        history=history,
        passes=passes,
    )


def verify_unimodality(result, graph, X, pref, dipcfg=None):
    """Re-test every swept column and the embedding on ``result.members``.

    Returns True iff each of them is unimodal at ``dipcfg.alpha``.
    """
    dipcfg = DipConfig() if dipcfg is None else dipcfg
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    members = np.asarray(result.members, dtype=np.int64)
    d = X.shape[1]
    columns = result.sweep_order or list(pref.designated) + [d]
    for col in columns:
        values = result.embedding.values[members] if col == d else X[members, col]
        if dip_test(values, dipcfg).p_value <= dipcfg.alpha:
            return False
    return True
