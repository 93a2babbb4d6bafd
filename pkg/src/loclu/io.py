"""Readers and writers for edge lists, attribute CSVs and label files.

Edge list: one edge per line as two whitespace-separated 0-based vertex ids.
An optional first non-comment line ``n <count>`` declares the vertex count;
otherwise it is one more than the largest id.  ``#`` starts a comment.

Attributes: CSV with one row per vertex in id order.  An optional header row
names the columns; a name ending in ``:cat`` marks a categorical column, which
is one-hot encoded (one column per distinct value, in sorted order).

Labels: one integer per line, line ``i`` belonging to vertex ``i``.
Vertex sets (for ``eval``) use the same one-id-per-line layout.
"""

import csv
import logging

import numpy as np

from .errors import InvalidInputError, ParseError
from .graph import Graph

log = logging.getLogger(__name__)

CATEGORICAL_SUFFIX = ":cat"


def _content_lines(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield lineno, line


def load_graph(path, n=None):
    """Read an edge list into a :class:`Graph`.

    Parameters
    ----------
    path : str or path-like
    n : int, optional
        Vertex count; overrides the file's ``n`` header if both are given and
        must not be smaller than any id in the file.
    """
    declared = None
    edges = []
    for lineno, line in _content_lines(path):
        parts = line.split()
        if parts[0] == "n":
            if declared is not None or edges:
                raise ParseError("the 'n <count>' header must come before any edge", lineno, path)
            if len(parts) != 2:
                raise ParseError(f"expected 'n <count>', got {line!r}", lineno, path)
            try:
                declared = int(parts[1])
            except ValueError:
                raise ParseError(f"vertex count {parts[1]!r} is not an integer", lineno, path) from None
            if declared < 0:
                raise ParseError("vertex count must be non-negative", lineno, path)
            continue
        if len(parts) != 2:
            raise ParseError(f"expected two vertex ids, got {line!r}", lineno, path)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"vertex ids must be integers, got {line!r}", lineno, path) from None
        if u < 0 or v < 0:
            raise ParseError(f"vertex ids must be non-negative, got {line!r}", lineno, path)
        limit = n if n is not None else declared
        if limit is not None and max(u, v) >= limit:
            raise ParseError(f"vertex id {max(u, v)} not below declared n={limit}", lineno, path)
        edges.append((u, v))
    if n is None:
        n = declared if declared is not None else (max(max(e) for e in edges) + 1 if edges else 0)
    graph = Graph(n, np.asarray(edges, dtype=np.int64).reshape(-1, 2))
    if graph.self_loops_dropped:
        log.warning("%s: dropped %d self-loop(s)", path, graph.self_loops_dropped)
    return graph


def write_graph(graph, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"n {graph.n}\n")
        for u, v in graph.edges():
            fh.write(f"{u} {v}\n")


def _is_number(cell):
    try:
        float(cell)
    except ValueError:
        return False
    return True


def load_attributes(path, n=None):
    """Read the attribute CSV; returns ``(X, column_names)``.

    Categorical columns expand to ``name=value`` indicator columns.
    """
    with open(path, encoding="utf-8", newline="") as fh:
        rows = [(i, [c.strip() for c in row]) for i, row in enumerate(csv.reader(fh), start=1)
                if row and any(c.strip() for c in row)]
    if not rows:
        if n in (None, 0):
            return np.empty((0, 0)), []
        raise InvalidInputError(f"{path}: no attribute rows, expected {n}")
    first_line, first = rows[0]
    header = None
    if not all(_is_number(c) for c in first):
        header = first
        rows = rows[1:]
    width = len(header) if header is not None else len(first)
    names = header or [f"x{j}" for j in range(width)]
    categorical = [name.endswith(CATEGORICAL_SUFFIX) for name in names]
    names = [name[:-len(CATEGORICAL_SUFFIX)] if cat else name for name, cat in zip(names, categorical)]
    if n is not None and len(rows) != n:
        raise InvalidInputError(f"{path}: {len(rows)} attribute rows but the graph has {n} vertices")

    cells = []
    for lineno, row in rows:
        if len(row) != width:
            raise ParseError(f"expected {width} fields, got {len(row)}", lineno, path)
        cells.append(row)

    blocks = []
    out_names = []
    for j in range(width):
        col = [row[j] for row in cells]
        if categorical[j]:
            levels = sorted(set(col))
            codes = {v: k for k, v in enumerate(levels)}
            onehot = np.zeros((len(col), len(levels)))
            onehot[np.arange(len(col)), [codes[v] for v in col]] = 1.0
            blocks.append(onehot)
            out_names.extend(f"{names[j]}={v}" for v in levels)
            continue
        values = np.empty(len(col))
        for i, cell in enumerate(col):
            lineno = rows[i][0]
            try:
                values[i] = float(cell)
            except ValueError:
                raise ParseError(f"non-numeric value {cell!r} in column {names[j]!r}", lineno, path) from None
            if not np.isfinite(values[i]):
                raise ParseError(f"non-finite value {cell!r} in column {names[j]!r}", lineno, path)
        blocks.append(values[:, None])
        out_names.append(names[j])
    X = np.hstack(blocks) if blocks else np.empty((len(cells), 0))
    return X, out_names


def write_attributes(X, path, names=None):
    X = np.asarray(X, dtype=np.float64)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names if names is not None else [f"x{j}" for j in range(X.shape[1])])
        for row in X:
            # repr round-trips doubles exactly
            w.writerow([repr(float(v)) for v in row])


def _load_ints(path, what):
    out = []
    for lineno, line in _content_lines(path):
        try:
            out.append(int(line))
        except ValueError:
            raise ParseError(f"{what} must be integers, got {line!r}", lineno, path) from None
    return np.asarray(out, dtype=np.int64)


def load_labels(path, n=None):
    labels = _load_ints(path, "labels")
    if n is not None and labels.size != n:
        raise InvalidInputError(f"{path}: {labels.size} labels but the graph has {n} vertices")
    return labels


def load_vertex_set(path):
    ids = _load_ints(path, "vertex ids")
    if ids.size and ids.min() < 0:
        raise InvalidInputError(f"{path}: negative vertex id")
    return ids


def write_ints(values, path):
    with open(path, "w", encoding="utf-8") as fh:
        for v in values:
            fh.write(f"{int(v)}\n")
