"""Undirected simple graphs, two-way vertex partitions, and edge-list file I/O.

Graphs are immutable after construction and store adjacency in CSR form
(one sorted neighbor array per vertex) so that neighbor-set intersection,
the dominant cost of motif counting, is a linear merge.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "Graph",
    "Partition",
    "LatentPositions",
    "EdgeListError",
    "LabelFileError",
    "circle_distance",
    "load_edge_list",
    "save_edge_list",
    "load_labels",
    "save_partition",
    "load_positions",
    "save_positions",
]


class EdgeListError(ValueError):
    """Malformed edge-list file; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LabelFileError(ValueError):
    """Malformed or incomplete label file."""


def circle_distance(x: float, y: float) -> float:
    """Wrap-around distance on the unit circle: min(|x-y|, 1-|x-y|).

    Inputs are expected in [0, 1); the result lies in [0, 1/2].
    """
    d = abs(x - y)
    return min(d, 1.0 - d)


def circle_distance_array(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Vectorized :func:`circle_distance`."""
    d = np.abs(np.asarray(x) - np.asarray(y))
    return np.minimum(d, 1.0 - d)


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices 0..n-1.

    ``indptr``/``indices`` form a CSR adjacency: the neighbors of ``u`` are
    ``indices[indptr[u]:indptr[u+1]]``, sorted ascending, with no self-loops
    and no duplicates. Symmetry (v in adj(u) iff u in adj(v)) is a class
    invariant; ``validate()`` checks it by full scan.
    """

    n: int
    indptr: np.ndarray = field(repr=False)
    indices: np.ndarray = field(repr=False)

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, u: int) -> np.ndarray:
        """Sorted neighbor ids of ``u`` (read-only view)."""
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def degree(self, u: int) -> int:
        return int(self.indptr[u + 1] - self.indptr[u])

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.neighbors(u)
        i = np.searchsorted(nbrs, v)
        return i < len(nbrs) and nbrs[i] == v

    def edge_array(self) -> np.ndarray:
        """All edges as an (E, 2) array with u < v, lexicographically sorted."""
        u = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        mask = u < self.indices
        return np.column_stack((u[mask], self.indices[mask]))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, v in self.edge_array():
            yield int(u), int(v)

    def validate(self) -> None:
        """Full-scan check of the adjacency invariants; raises ValueError."""
        if self.indptr[0] != 0 or self.indptr[-1] != len(self.indices):
            raise ValueError("corrupt CSR index")
        for u in range(self.n):
            nbrs = self.neighbors(u)
            if len(nbrs) == 0:
                continue
            if np.any(nbrs[:-1] >= nbrs[1:]):
                raise ValueError(f"adjacency of {u} not sorted/unique")
            if np.any(nbrs == u):
                raise ValueError(f"self-loop at {u}")
            if np.any((nbrs < 0) | (nbrs >= self.n)):
                raise ValueError(f"neighbor of {u} out of range")
            for v in nbrs:
                if not self.has_edge(int(v), u):
                    raise ValueError(f"asymmetric edge ({u}, {v})")

    @classmethod
    def from_edge_arrays(cls, n: int, u: np.ndarray, v: np.ndarray) -> "Graph":
        """Build from parallel endpoint arrays (one entry per undirected edge).

        Duplicate edges are collapsed; self-loops are rejected.
        """
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if len(u) and (u.min() < 0 or v.min() < 0 or max(u.max(), v.max()) >= n):
            raise ValueError("vertex id out of range")
        if np.any(u == v):
            raise ValueError("self-loop")
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        key = lo * np.int64(n) + hi
        key = np.unique(key)
        lo, hi = key // n, key % n
        src = np.concatenate((lo, hi))
        dst = np.concatenate((hi, lo))
        order = np.lexsort((dst, src))
        indices = dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(n=n, indptr=indptr, indices=indices)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        pairs = list(edges)
        if not pairs:
            return cls(n=n, indptr=np.zeros(n + 1, dtype=np.int64),
                       indices=np.empty(0, dtype=np.int64))
        arr = np.asarray(pairs, dtype=np.int64)
        return cls.from_edge_arrays(n, arr[:, 0], arr[:, 1])

    def edge_set_equal(self, other: "Graph") -> bool:
        return (self.n == other.n
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))


@dataclass(frozen=True)
class Partition:
    """Cluster assignment per vertex, labels in {0, 1}.

    Comparisons between partitions are made up to a global label swap; see
    :mod:`geoblock.metrics`.
    """

    labels: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int8)
        if labels.ndim != 1:
            raise ValueError("labels must be one-dimensional")
        if len(labels) and not np.all((labels == 0) | (labels == 1)):
            raise ValueError("labels must be 0 or 1")
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def swapped(self) -> "Partition":
        return Partition(labels=1 - self.labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and np.array_equal(self.labels, other.labels)

    @classmethod
    def equal_halves(cls, n: int) -> "Partition":
        """Ground-truth layout used by the generators: 0..n/2-1, then n/2..n-1."""
        labels = np.zeros(n, dtype=np.int8)
        labels[n // 2:] = 1
        return cls(labels=labels)


@dataclass(frozen=True)
class LatentPositions:
    """Per-vertex latent positions: circle points in [0, 1) or unit vectors.

    ``values`` has shape (n,) in circle mode and (n, t) in sphere mode.
    """

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim == 1:
            if len(values) and (values.min() < 0.0 or values.max() >= 1.0):
                raise ValueError("circle positions must lie in [0, 1)")
        elif values.ndim == 2:
            norms = np.linalg.norm(values, axis=1)
            if len(norms) and np.any(np.abs(norms - 1.0) > 1e-12):
                raise ValueError("sphere positions must have unit norm")
        else:
            raise ValueError("positions must be a vector or an (n, t) matrix")
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def is_spherical(self) -> bool:
        return self.values.ndim == 2


# ---------------------------------------------------------------------------
# File formats.
#
# Edge list: UTF-8 text, one "u v" per line, whitespace separated, '#' starts
# a comment, optional first content line "n <count>" fixes the vertex count.
# Label file: "vertex label" per line, labels in {0, 1}, all vertices present.
# Positions file: "vertex x" (circle) or "vertex x1 .. xt" (sphere) per line.
# ---------------------------------------------------------------------------

def _content_lines(path: str | Path) -> Iterator[tuple[int, str]]:
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield lineno, line


def load_edge_list(path: str | Path) -> Graph:
    """Parse an edge-list file into a Graph.

    The vertex count is 1 + the largest id seen unless a leading "n <count>"
    header overrides it. Duplicate edges collapse; self-loops are an error.
    """
    us: list[int] = []
    vs: list[int] = []
    n_header: int | None = None
    max_id = -1
    first = True
    for lineno, line in _content_lines(path):
        parts = line.split()
        if first and parts[0] == "n":
            first = False
            if len(parts) != 2:
                raise EdgeListError("header must be 'n <count>'", lineno)
            try:
                n_header = int(parts[1])
            except ValueError:
                raise EdgeListError(f"bad vertex count {parts[1]!r}", lineno) from None
            if n_header < 0:
                raise EdgeListError("vertex count must be non-negative", lineno)
            continue
        first = False
        if len(parts) != 2:
            raise EdgeListError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"non-integer vertex in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise EdgeListError(f"negative vertex id in {line!r}", lineno)
        if u == v:
            raise EdgeListError(f"self-loop at vertex {u}", lineno)
        us.append(u)
        vs.append(v)
        if u > max_id:
            max_id = u
        if v > max_id:
            max_id = v
    if n_header is None and not us:
        raise EdgeListError(f"empty edge-list file: {path}")
    n = n_header if n_header is not None else max_id + 1
    if max_id >= n:
        raise EdgeListError(f"vertex id {max_id} exceeds declared count {n}")
    return Graph.from_edge_arrays(n, np.asarray(us, dtype=np.int64),
                                  np.asarray(vs, dtype=np.int64))


def save_edge_list(graph: Graph, path: str | Path) -> None:
    """Write a Graph in the edge-list format, with an "n <count>" header."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"n {graph.n}\n")
        for u, v in graph.edge_array():
            fh.write(f"{u} {v}\n")


def save_partition(partition: Partition, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for v, lab in enumerate(partition.labels):
            fh.write(f"{v} {lab}\n")


def load_labels(path: str | Path) -> Partition:
    """Read a label file; every vertex 0..n-1 must appear exactly once."""
    seen: dict[int, int] = {}
    for lineno, line in _content_lines(path):
        parts = line.split()
        if len(parts) != 2:
            raise LabelFileError(f"line {lineno}: expected 'vertex label', got {line!r}")
        try:
            v, lab = int(parts[0]), int(parts[1])
        except ValueError:
            raise LabelFileError(f"line {lineno}: non-integer field in {line!r}") from None
        if lab not in (0, 1):
            raise LabelFileError(f"line {lineno}: label {lab} outside {{0, 1}}")
        if v in seen:
            raise LabelFileError(f"line {lineno}: duplicate vertex {v}")
        seen[v] = lab
    if not seen:
        raise LabelFileError(f"empty label file: {path}")
    n = max(seen) + 1
    missing = [v for v in range(n) if v not in seen]
    if missing:
        raise LabelFileError(f"missing vertices (first: {missing[0]}) in {path}")
    labels = np.fromiter((seen[v] for v in range(n)), dtype=np.int8, count=n)
    return Partition(labels=labels)


def save_positions(positions: LatentPositions, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if positions.is_spherical:
            for v, row in enumerate(positions.values):
                fh.write(f"{v} " + " ".join(repr(float(c)) for c in row) + "\n")
        else:
            for v, x in enumerate(positions.values):
                fh.write(f"{v} {float(x)!r}\n")


def load_positions(path: str | Path) -> LatentPositions:
    rows: dict[int, list[float]] = {}
    width: int | None = None
    for lineno, line in _content_lines(path):
        parts = line.split()
        if len(parts) < 2:
            raise ValueError(f"line {lineno}: expected 'vertex position...'")
        v = int(parts[0])
        coords = [float(p) for p in parts[1:]]
        if width is None:
            width = len(coords)
        elif len(coords) != width:
            raise ValueError(f"line {lineno}: inconsistent position width")
        rows[v] = coords
    if not rows:
        raise ValueError(f"empty positions file: {path}")
    n = max(rows) + 1
    if len(rows) != n:
        raise ValueError("missing vertices in positions file")
    arr = np.asarray([rows[v] for v in range(n)], dtype=np.float64)
    if width == 1:
        arr = arr[:, 0]
    return LatentPositions(values=arr)
