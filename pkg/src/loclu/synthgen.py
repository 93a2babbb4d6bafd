"""Planted-partition attributed graphs with known local clusters.

Graph blocks are dense on the diagonal (``p_in``) and sparse elsewhere
(``p_out``).  Each block is then split in two halves that get their own
"relevant" attribute means, so a ground-truth cluster is one half of a graph
block.  Irrelevant attributes are drawn per cluster of a random relabelling of
the vertices, which decouples them from the graph structure.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError
from .graph import Graph


@dataclass(frozen=True)
class SyntheticSpec:
    cluster_sizes: tuple
    p_in: float = 0.35
    p_out: float = 0.01
    d: int = 20
    relevant_ratio: float = 0.5
    relevant_mean_range: tuple = (0.0, 10.0)
    relevant_variance: float = 0.001
    irrelevant_mean_range: tuple = (10.0, 20.0)
    irrelevant_variance: float = 1.0
    # 0 disables; otherwise relevant means of distinct clusters differ by at least this much
    min_mean_separation: float = 0.0
    # shuffle the attribute columns (the permutation is recorded on the instance)
    shuffle_columns: bool = False
    rng_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "cluster_sizes", tuple(int(s) for s in self.cluster_sizes))
        if not self.cluster_sizes or min(self.cluster_sizes) < 2:
            raise InvalidInputError("every graph cluster needs at least two vertices to be bisected")
        if sum(self.cluster_sizes) < 4:
            raise InvalidInputError("need at least four vertices in total")
        if not 0.0 <= self.p_out < self.p_in <= 1.0:
            raise InvalidInputError("require 0 <= p_out < p_in <= 1")
        if not 0.0 <= self.relevant_ratio <= 1.0:
            raise InvalidInputError("relevant_ratio must lie in [0, 1]")
        if self.d < 0:
            raise InvalidInputError("attribute count must be non-negative")
        if self.relevant_variance <= 0 or self.irrelevant_variance <= 0:
            raise InvalidInputError("variances must be positive")
        for lo, hi in (self.relevant_mean_range, self.irrelevant_mean_range):
            if not lo <= hi:
                raise InvalidInputError("mean ranges must be ordered (low, high)")
        if self.min_mean_separation < 0:
            raise InvalidInputError("min_mean_separation must be non-negative")
        lo, hi = self.relevant_mean_range
        k = 2 * len(self.cluster_sizes)
        if self.min_mean_separation > 0 and self.n_relevant and (k - 1) * self.min_mean_separation > hi - lo:
            raise InvalidInputError(f"cannot place {k} means {self.min_mean_separation} apart in {self.relevant_mean_range}")
        if not 0 <= self.rng_seed < 2**64:
            raise InvalidInputError("rng_seed must be an unsigned 64-bit integer")

    @property
    def n(self):
        return sum(self.cluster_sizes)

    @property
    def n_relevant(self):
        return math.ceil(self.relevant_ratio * self.d - 1e-9)


@dataclass
class SyntheticInstance:
    graph: Graph
    X: np.ndarray
    truth: np.ndarray
    # graph block of every vertex (before bisection)
    blocks: np.ndarray
    relevant: list = field(default_factory=list)
    column_permutation: np.ndarray | None = None

    def cluster_of(self, v):
        """Vertex ids sharing ``v``'s ground-truth cluster."""
        return np.flatnonzero(self.truth == self.truth[v])


def _sample_block_edges(rng, offsets, sizes, p_in, p_out):
    chunks = []
    k = len(sizes)
    for a in range(k):
        for b in range(a, k):
            p = p_in if a == b else p_out
            if p <= 0:
                continue
            sa, sb = sizes[a], sizes[b]
            total = sa * (sa - 1) // 2 if a == b else sa * sb
            if total == 0:
                continue
            if p >= 1:
                picks = np.arange(total, dtype=np.int64)
            else:
                m = rng.binomial(total, p)
                picks = np.sort(rng.choice(total, size=m, replace=False))
            if a == b:
                # unrank strictly-upper-triangular positions row by row
                r = (2 * sa - 1 - np.sqrt((2 * sa - 1) ** 2 - 8 * picks.astype(np.float64))) // 2
                r = r.astype(np.int64)
                before = r * (2 * sa - r - 1) // 2
                # fix float rounding at row boundaries
                over = before > picks
                r[over] -= 1
                before = r * (2 * sa - r - 1) // 2
                under = picks - before >= sa - r - 1
                r[under] += 1
                before = r * (2 * sa - r - 1) // 2
                c = picks - before + r + 1
                chunks.append(np.stack([offsets[a] + r, offsets[a] + c], axis=1))
            else:
                chunks.append(np.stack([offsets[a] + picks // sb, offsets[b] + picks % sb], axis=1))
    if not chunks:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(chunks)


def _separated_means(rng, k, lo, hi, gap):
    """``k`` means uniform on ``[lo, hi]`` subject to pairwise distance ``>= gap``.

    Sorted uniforms on the range shortened by ``(k - 1) * gap`` are spread
    apart by ``i * gap``; this is uniform over the constrained set.  The
    order of assignment to clusters is then shuffled.
    """
    if gap <= 0 or k < 2:
        return rng.uniform(lo, hi, size=k)
    span = hi - lo - (k - 1) * gap
    if span < 0:
        raise InvalidInputError(f"cannot place {k} means {gap} apart in [{lo}, {hi}]")
    means = lo + np.sort(rng.uniform(0.0, span, size=k)) + gap * np.arange(k)
    return rng.permutation(means)


def generate(spec):
    """Draw a :class:`SyntheticInstance` from ``spec`` (deterministic in ``rng_seed``)."""
    graph_ss, rel_ss, irr_ss, col_ss = np.random.SeedSequence(spec.rng_seed).spawn(4)
    sizes = np.asarray(spec.cluster_sizes, dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(sizes)[:-1]])
    n = int(sizes.sum())

    edges = _sample_block_edges(np.random.default_rng(graph_ss), offsets, sizes, spec.p_in, spec.p_out)
    graph = Graph(n, edges)

    blocks = np.repeat(np.arange(sizes.size), sizes)
    truth = np.empty(n, dtype=np.int64)
    for g, (off, size) in enumerate(zip(offsets, sizes)):
        half = (size + 1) // 2
        truth[off:off + half] = 2 * g
        truth[off + half:off + size] = 2 * g + 1
    k = 2 * sizes.size

    X = np.empty((n, spec.d))
    n_rel = spec.n_relevant
    rng = np.random.default_rng(rel_ss)
    sd = math.sqrt(spec.relevant_variance)
    for a in range(n_rel):
        means = _separated_means(rng, k, *spec.relevant_mean_range, spec.min_mean_separation)
        X[:, a] = rng.normal(means[truth], sd)

    rng = np.random.default_rng(irr_ss)
    shuffled = truth[rng.permutation(n)]
    sd = math.sqrt(spec.irrelevant_variance)
    for a in range(n_rel, spec.d):
        means = rng.uniform(*spec.irrelevant_mean_range, size=k)
        X[:, a] = rng.normal(means[shuffled], sd)

    relevant = list(range(n_rel))
    perm = None
    if spec.shuffle_columns:
        perm = np.random.default_rng(col_ss).permutation(spec.d)
        X = X[:, perm]
        inverse = np.argsort(perm)
        relevant = sorted(int(inverse[a]) for a in relevant)
    return SyntheticInstance(graph=graph, X=X, truth=truth, blocks=blocks, relevant=relevant,
                             column_permutation=perm)


def variable_size_spec(range_low, range_high, k, rng_seed=0, **kwargs):
    """Spec with ``k`` graph clusters whose sizes are uniform on ``[range_low, range_high]``."""
    if not 4 <= range_low <= range_high:
        raise InvalidInputError("size range must satisfy 4 <= low <= high")
    if k < 1:
        raise InvalidInputError("need at least one cluster")
    sizes = np.random.default_rng([rng_seed, 0x5A5]).integers(range_low, range_high + 1, size=k)
    return SyntheticSpec(cluster_sizes=tuple(int(s) for s in sizes), rng_seed=rng_seed, **kwargs)
