"""Immutable simple undirected graphs with contiguous node indices."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .errors import MalformedInputError, UndefinedDensityError


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class Graph:
    """Simple undirected graph on nodes ``0..n_nodes-1``.

    Edges are held once each as ``(u, v)`` with ``u < v``, sorted
    lexicographically. Adjacency is kept in CSR form (``indptr``/``indices``)
    with every neighbor list sorted ascending. Instances are immutable and
    compare structurally.
    """

    __slots__ = ("_n", "_edges", "_indptr", "_indices", "_frozen")

    def __init__(self, n_nodes: int, edges: np.ndarray):
        # ``edges`` must already be canonical; use build_graph for raw input.
        self._n = int(n_nodes)
        self._edges = _readonly(np.asarray(edges, dtype=np.int64).reshape(-1, 2))
        both = np.concatenate([self._edges, self._edges[:, ::-1]])
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        counts = np.bincount(both[:, 0], minlength=self._n) if len(both) else np.zeros(self._n, np.int64)
        indptr = np.zeros(self._n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        self._indptr = _readonly(indptr)
        self._indices = _readonly(both[:, 1].copy())
        self._frozen = True

    def __setattr__(self, name, value):
        if getattr(self, "_frozen", False):
            raise AttributeError("Graph is immutable")
        object.__setattr__(self, name, value)

    def __getstate__(self):
        return (self._n, np.array(self._edges))

    def __setstate__(self, state):
        Graph.__init__(self, *state)

    @property
    def n_nodes(self) -> int:
        return self._n

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> np.ndarray:
        """``(n_edges, 2)`` read-only array of ``(u, v)`` pairs with ``u < v``."""
        return self._edges

    @property
    def indptr(self) -> np.ndarray:
        return self._indptr

    @property
    def indices(self) -> np.ndarray:
        return self._indices

    def neighbors(self, v: int) -> np.ndarray:
        return self._indices[self._indptr[v]:self._indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self._indptr[v + 1] - self._indptr[v])

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self._indptr)

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.neighbors(u)
        i = np.searchsorted(nbrs, v)
        return bool(i < len(nbrs) and nbrs[i] == v)

    def adjacency(self) -> sp.csr_matrix:
        data = np.ones(len(self._indices), dtype=np.float64)
        return sp.csr_matrix((data, self._indices, self._indptr), shape=(self._n, self._n))

    def content_hash(self) -> bytes:
        """Digest of the canonical structure; identical graphs hash identically."""
        h = hashlib.blake2b(digest_size=16)
        h.update(np.int64(self._n).tobytes())
        h.update(np.ascontiguousarray(self._edges).tobytes())
        return h.digest()

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._edges, other._edges)

    def __hash__(self):
        return hash(self.content_hash())

    def __repr__(self):
        return f"Graph(n_nodes={self._n}, n_edges={self.n_edges})"


def build_graph(edge_pairs: Iterable, declared_node_count: int | None = None) -> Graph:
    """Build a Graph from raw node-id pairs.

    Self-loops are dropped and duplicate or reversed pairs collapse to one
    edge. Without ``declared_node_count`` the graph has ``max id + 1`` nodes.
    """
    arr = np.asarray(list(edge_pairs) if not isinstance(edge_pairs, np.ndarray) else edge_pairs)
    if arr.size == 0:
        arr = np.zeros((0, 2), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise MalformedInputError("edge pairs must be a sequence of (u, v)")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise MalformedInputError("node ids must be integers")
    arr = arr.astype(np.int64)
    if arr.size and arr.min() < 0:
        raise MalformedInputError("node ids must be non-negative")
    max_id = int(arr.max()) if arr.size else -1
    if declared_node_count is None:
        n = max_id + 1
    else:
        n = int(declared_node_count)
        if max_id >= n:
            raise MalformedInputError(f"node id {max_id} exceeds declared node count {n}")
    arr = arr[arr[:, 0] != arr[:, 1]]
    arr = np.sort(arr, axis=1)
    if len(arr):
        arr = np.unique(arr, axis=0)
    return Graph(n, arr)


def density(g: Graph) -> float:
    n = g.n_nodes
    if n < 2:
        raise UndefinedDensityError(f"density undefined for {n} node(s)")
    return 2.0 * g.n_edges / (n * (n - 1))


@dataclass(frozen=True)
class ComponentLabeling:
    labels: np.ndarray
    component_sizes: list

    @property
    def n_components(self) -> int:
        return len(self.component_sizes)


def connected_components(g: Graph) -> ComponentLabeling:
    """Label components; ids follow the order of each component's smallest node."""
    if g.n_nodes == 0:
        return ComponentLabeling(_readonly(np.zeros(0, np.int64)), [])
    _, raw = csgraph.connected_components(g.adjacency(), directed=False)
    _, first = np.unique(raw, return_index=True)
    # unique() sorts by raw label; reorder so label k is the k-th component met scanning 0..n-1
    relabel = np.empty(len(first), dtype=np.int64)
    relabel[np.argsort(first)] = np.arange(len(first))
    labels = relabel[raw]
    sizes = np.bincount(labels).tolist()
    return ComponentLabeling(_readonly(labels), sizes)


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> Graph:
    """Subgraph on ``nodes``, re-indexed by ascending original id."""
    keep = np.unique(np.fromiter((int(v) for v in nodes), dtype=np.int64))
    if keep.size and (keep[0] < 0 or keep[-1] >= g.n_nodes):
        raise MalformedInputError("node id out of range")
    remap = np.full(g.n_nodes, -1, dtype=np.int64)
    remap[keep] = np.arange(len(keep))
    e = remap[g.edges] if g.n_edges else np.zeros((0, 2), np.int64)
    e = e[(e[:, 0] >= 0) & (e[:, 1] >= 0)]
    # remap is monotone, so rows stay canonical and sorted
    return Graph(len(keep), e)


def largest_component(g: Graph) -> Graph:
    """Induced subgraph on the largest component (ties: smallest min node id)."""
    lab = connected_components(g)
    if lab.n_components <= 1:
        return g
    best = int(np.argmax(lab.component_sizes))
    return induced_subgraph(g, np.flatnonzero(lab.labels == best))


def complete_graph(n: int) -> Graph:
    iu = np.triu_indices(n, k=1)
    return Graph(n, np.column_stack(iu))


def path_graph(n: int) -> Graph:
    v = np.arange(n - 1)
    return Graph(n, np.column_stack([v, v + 1]))


def cycle_graph(n: int) -> Graph:
    return build_graph([(i, (i + 1) % n) for i in range(n)], n)


def star_graph(n: int) -> Graph:
    """Star on ``n`` nodes with center 0."""
    v = np.arange(1, n)
    return Graph(n, np.column_stack([np.zeros_like(v), v]))


def disjoint_union(*graphs: Graph) -> Graph:
    parts, offset = [], 0
    for h in graphs:
        parts.append(h.edges + offset)
        offset += h.n_nodes
    return Graph(offset, np.concatenate(parts) if parts else np.zeros((0, 2), np.int64))
