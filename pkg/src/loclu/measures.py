"""Cluster quality scores (GU, AU, Compactness) and accuracy metrics (NMI, F1)."""

import numpy as np

from .dip import dip_value
from .errors import InvalidInputError


def _member_index(C, n=None):
    idx = np.asarray(sorted(set(int(v) for v in C)), dtype=np.int64)
    if idx.size == 0:
        raise InvalidInputError("cluster is empty")
    if idx[0] < 0 or (n is not None and idx[-1] >= n):
        raise InvalidInputError("cluster contains ids outside the vertex range")
    return idx


def graph_unimodality(E, C):
    """Mean dip of the embedding columns restricted to ``C``.

    ``E`` is a length-n vector (one embedding column) or an ``(n, r)`` array.
    """
    E = np.asarray(E, dtype=np.float64)
    if E.ndim == 1:
        E = E[:, None]
    idx = _member_index(C, E.shape[0])
    return float(np.mean([dip_value(E[idx, i]) for i in range(E.shape[1])]))


def attribute_unimodality(X, C, designated):
    """Mean dip of the designated columns of ``X`` restricted to ``C``."""
    designated = list(designated)
    if not designated:
        raise InvalidInputError("attribute unimodality needs at least one designated attribute")
    X = np.asarray(X, dtype=np.float64)
    idx = _member_index(C, X.shape[0])
    return float(np.mean([dip_value(X[idx, a]) for a in designated]))


def compactness(gu, au):
    return gu + au


def _binary_labels(members, n):
    lab = np.zeros(n, dtype=bool)
    m = np.asarray(list(members), dtype=np.int64)
    if m.size and (m.min() < 0 or m.max() >= n):
        raise InvalidInputError("cluster contains ids outside the vertex range")
    lab[m] = True
    return lab


def _entropy(p):
    p = p[p > 0]
    return float(-(p * np.log(p)).sum())


def nmi(detected, truth, n):
    """Normalized mutual information of two membership labelings over ``n`` vertices.

    Both sets are turned into in/out labelings and compared with
    ``2 I / (H_truth + H_detected)`` (natural log).  Identical labelings score 1;
    otherwise a labeling with zero entropy scores 0.
    """
    a = _binary_labels(detected, n)
    b = _binary_labels(truth, n)
    if np.array_equal(a, b):
        return 1.0
    joint = np.array([
        [np.sum(~a & ~b), np.sum(~a & b)],
        [np.sum(a & ~b), np.sum(a & b)],
    ], dtype=np.float64) / n
    pa = joint.sum(axis=1)
    pb = joint.sum(axis=0)
    ha = _entropy(pa)
    hb = _entropy(pb)
    if ha == 0.0 or hb == 0.0:
        return 0.0
    nz = joint > 0
    mi = float(np.sum(joint[nz] * np.log(joint[nz] / np.outer(pa, pb)[nz])))
    return min(1.0, max(0.0, 2.0 * mi / (ha + hb)))


def f1(detected, truth):
    """Harmonic mean of precision and recall of ``detected`` against ``truth``."""
    c = set(int(v) for v in detected)
    t = set(int(v) for v in truth)
    if not c or not t:
        raise InvalidInputError("F1 needs non-empty detected and truth sets")
    hit = len(c & t)
    if hit == 0:
        return 0.0
    p = hit / len(c)
    r = hit / len(t)
    return 2 * p * r / (p + r)
