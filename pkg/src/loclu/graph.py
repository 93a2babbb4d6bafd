"""Undirected graphs, the random-walk operator and the power-iteration embedding."""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import InvalidConfigError, InvalidInputError

EXACT_EIGEN_MAX_N = 2000


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Stored as a symmetric CSR adjacency with sorted neighbour lists.  The
    object is immutable after construction.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : array_like of shape (e, 2)
        Vertex pairs.  Order within a pair does not matter; duplicates and
        self-loops are dropped (``self_loops_dropped`` records how many
        self-loop rows were seen).
    """

    def __init__(self, n, edges=()):
        n = int(n)
        if n < 0:
            raise InvalidInputError("vertex count must be non-negative")
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2) if len(edges) else np.empty((0, 2), np.int64)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise InvalidInputError(f"edge endpoint outside 0..{n - 1}")
        loops = e[:, 0] == e[:, 1]
        self.self_loops_dropped = int(loops.sum())
        e = e[~loops]
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        pairs = np.unique(np.stack([lo, hi], axis=1), axis=0) if e.size else np.empty((0, 2), np.int64)
        self._pairs = pairs
        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])
        data = np.ones(rows.size, dtype=np.float64)
        adj = sp.csr_matrix((data, (rows, cols)), shape=(n, n))
        adj.sort_indices()
        self.adjacency = adj
        self.n = n
        self.degree = np.diff(adj.indptr).astype(np.int64)
        self._inv_degree = np.zeros(n)
        nz = self.degree > 0
        self._inv_degree[nz] = 1.0 / self.degree[nz]
        self._isolated = ~nz

    @classmethod
    def from_adjacency(cls, a):
        a = sp.coo_matrix(a)
        if a.shape[0] != a.shape[1]:
            raise InvalidInputError("adjacency must be square")
        keep = a.data != 0
        return cls(a.shape[0], np.stack([a.row[keep], a.col[keep]], axis=1))

    @property
    def n_edges(self):
        return int(self._pairs.shape[0])

    def edges(self):
        """Unique undirected edges as an ``(e, 2)`` array with ``i < j``, sorted."""
        return self._pairs.copy()

    def neighbors(self, i):
        a = self.adjacency
        return a.indices[a.indptr[i]:a.indptr[i + 1]]

    def subgraph_edges(self, members):
        """Number of edges with both endpoints in ``members``."""
        mask = np.zeros(self.n, dtype=bool)
        mask[np.asarray(list(members), dtype=np.int64)] = True
        return int(np.sum(mask[self._pairs[:, 0]] & mask[self._pairs[:, 1]]))

    def permuted(self, perm):
        """Graph with vertex ``i`` relabelled to ``perm[i]``."""
        perm = np.asarray(perm, dtype=np.int64)
        return Graph(self.n, perm[self._pairs])

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and np.array_equal(self._pairs, other._pairs)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.n_edges})"


def transition_apply(graph, v):
    """Apply the random-walk matrix ``W = D^-1 A`` to ``v`` in ``O(e)``.

    An isolated vertex transitions to itself, so its entry is passed through.
    """
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (graph.n,):
        raise InvalidInputError(f"vector length {v.shape} does not match n={graph.n}")
    out = graph.adjacency @ v
    out *= graph._inv_degree
    out[graph._isolated] = v[graph._isolated]
    return out


@dataclass(frozen=True)
class PowerIterConfig:
    epsilon_hat: float = 0.001
    max_iter: int = 1000
    rng_seed: int = 0

    def __post_init__(self):
        if not self.epsilon_hat > 0:
            raise InvalidConfigError(f"epsilon_hat must be positive, got {self.epsilon_hat}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise InvalidConfigError(f"max_iter must be a positive integer, got {self.max_iter}")
        if int(self.rng_seed) != self.rng_seed or not 0 <= self.rng_seed < 2**64:
            raise InvalidConfigError(f"rng_seed must be an unsigned 64-bit integer, got {self.rng_seed}")


@dataclass(frozen=True)
class EmbeddingVector:
    values: np.ndarray
    iterations: int
    # L1 norm of every iterate, for auditing the normalisation
    norms: tuple = ()


def initial_vector(n, rng_seed):
    return np.random.default_rng(rng_seed).standard_normal(n)


def power_iteration(graph, cfg=None, v0=None):
    """Early-stopped power iteration on the random-walk matrix.

    Starting from a standard-normal vector, iterates ``v <- Wv / |Wv|_1``.
    With velocity ``delta_t = |v_t - v_{t-1}|`` (elementwise; ``delta_0 = 0``)
    the loop stops once ``max |delta_{t+1} - delta_t| <= epsilon_hat`` or after
    ``max_iter`` steps.

    Parameters
    ----------
    graph : Graph
    cfg : PowerIterConfig, optional
    v0 : array_like, optional
        Explicit start vector; overrides the seeded draw.

    Returns
    -------
    EmbeddingVector
    """
    cfg = PowerIterConfig() if cfg is None else cfg
    n = graph.n
    if n == 0:
        raise InvalidInputError("cannot embed an empty graph")
    v = initial_vector(n, cfg.rng_seed) if v0 is None else np.array(v0, dtype=np.float64)
    if v.shape != (n,):
        raise InvalidInputError("start vector has the wrong length")
    delta = np.zeros(n)
    norms = []
    t = 0
    while True:
        w = transition_apply(graph, v)
        norm = np.abs(w).sum()
        if norm == 0.0:
            # start vector in the kernel of W; nothing more to learn
            break
        v_next = w / norm
        norms.append(float(np.abs(v_next).sum()))
        delta_next = np.abs(v_next - v)
        accel = np.max(np.abs(delta_next - delta))
        v, delta = v_next, delta_next
        t += 1
        if accel <= cfg.epsilon_hat or t >= cfg.max_iter:
            break
    return EmbeddingVector(values=v, iterations=t, norms=tuple(norms))


def exact_second_eigenvector(graph):
    """Eigenvector of ``L = I - W`` for the second smallest eigenvalue.

    Dense; meant for validating the embedding on small graphs.  Solved through
    the symmetric matrix ``D^-1/2 A D^-1/2`` and mapped back with ``D^-1/2``,
    so the result is orthogonal to the constant vector in the ``D`` inner
    product.  Isolated vertices keep their self-loop convention.
    """
    n = graph.n
    if n > EXACT_EIGEN_MAX_N:
        raise InvalidInputError(f"dense eigensolver limited to n <= {EXACT_EIGEN_MAX_N}")
    if n < 2:
        raise InvalidInputError("need at least two vertices")
    deg = graph.degree.astype(np.float64)
    a = graph.adjacency.toarray()
    iso = deg == 0
    a[iso, iso] = 1.0
    deg = np.where(iso, 1.0, deg)
    s = 1.0 / np.sqrt(deg)
    sym = s[:, None] * a * s[None, :]
    vals, vecs = np.linalg.eigh(sym)
    # largest eigenvalue of W is the smallest of L; take the runner-up
    u = vecs[:, -2]
    e2 = s * u
    e2 /= np.abs(e2).sum()
    # fix the sign so the first non-zero entry is negative
    nz = np.flatnonzero(np.abs(e2) > 1e-14)
    if nz.size and e2[nz[0]] > 0:
        e2 = -e2
    return e2
