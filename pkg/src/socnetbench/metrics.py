"""Per-graph structural statistics reduced to MMD-ready samples."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .errors import IncompatibleSampleError, MalformedInputError, TooSmallGraphError
from .graph import Graph


@dataclass(frozen=True)
class BinSpec:
    """``count`` equal-width bins over ``[lower, upper]``; the last bin is closed."""

    lower: float
    upper: float
    count: int

    def __post_init__(self):
        if self.count < 1 or not self.upper > self.lower:
            raise MalformedInputError(f"invalid bin spec {self}")

    @classmethod
    def integers(cls, first: int, last: int) -> "BinSpec":
        """One bin per integer in ``first..last``."""
        last = max(last, first)
        return cls(float(first), float(last + 1), last - first + 1)

    def as_tuple(self) -> tuple:
        return (self.lower, self.upper, self.count)


@dataclass(frozen=True, eq=False)
class MetricSample:
    kind: str
    scalar_value: float | None = None
    bins: np.ndarray | None = None
    bin_domain: BinSpec | None = None

    def __post_init__(self):
        if self.kind == "scalar":
            if self.scalar_value is None or self.bins is not None:
                raise MalformedInputError("scalar sample needs a value and no bins")
        elif self.kind == "histogram":
            if self.bins is None or self.scalar_value is not None or self.bin_domain is None:
                raise MalformedInputError("histogram sample needs bins and a domain")
            if len(self.bins) != self.bin_domain.count:
                raise MalformedInputError("bin weights do not match the domain")
        else:
            raise MalformedInputError(f"unknown sample kind {self.kind!r}")

    @classmethod
    def scalar(cls, value: float) -> "MetricSample":
        return cls("scalar", scalar_value=float(value))

    def vector(self) -> np.ndarray:
        return np.array([self.scalar_value]) if self.kind == "scalar" else self.bins

    def compatible_with(self, other: "MetricSample") -> bool:
        return self.kind == other.kind and self.bin_domain == other.bin_domain

    def __eq__(self, other):
        if not isinstance(other, MetricSample) or not self.compatible_with(other):
            return False
        return np.array_equal(self.vector(), other.vector())


def histogram(values, spec: BinSpec) -> MetricSample:
    """Normalized histogram; values outside the domain are clipped into the end bins."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise IncompatibleSampleError("cannot build a histogram from zero values")
    values = np.clip(values, spec.lower, spec.upper)
    counts, _ = np.histogram(values, bins=spec.count, range=(spec.lower, spec.upper))
    return MetricSample("histogram", bins=counts / values.size, bin_domain=spec)


def degree_values(g: Graph) -> np.ndarray:
    return g.degrees.copy()


def clustering_values(g: Graph) -> np.ndarray:
    """Local clustering ``2T(v) / (d(v)(d(v)-1))``; 0 for degree <= 1."""
    a = g.adjacency()
    tri = np.asarray((a @ a).multiply(a).sum(axis=1)).ravel() / 2.0
    d = g.degrees.astype(np.float64)
    c = np.zeros(g.n_nodes)
    ok = d > 1
    c[ok] = 2.0 * tri[ok] / (d[ok] * (d[ok] - 1.0))
    return c


def normalized_laplacian(g: Graph) -> np.ndarray:
    """Dense ``D^-1/2 (D - A) D^-1/2``; rows and columns of isolated nodes are zero."""
    d = g.degrees.astype(np.float64)
    inv = np.zeros_like(d)
    inv[d > 0] = 1.0 / np.sqrt(d[d > 0])
    a = g.adjacency().toarray()
    lap = np.diag((d > 0).astype(np.float64)) - inv[:, None] * a * inv[None, :]
    return lap


def spectrum_values(g: Graph) -> np.ndarray:
    if g.n_nodes == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh(normalized_laplacian(g))


def path_length_values(g: Graph) -> np.ndarray:
    """Shortest-path lengths over ordered reachable pairs ``u != v`` (BFS from every node)."""
    if g.n_nodes < 2:
        raise TooSmallGraphError("path lengths need at least 2 nodes")
    dist = csgraph.shortest_path(sp.csr_matrix(g.adjacency()), method="D", directed=False, unweighted=True)
    np.fill_diagonal(dist, np.inf)
    return dist[np.isfinite(dist)].astype(np.int64)


def degree_sample(g: Graph, bins: BinSpec | None = None) -> MetricSample:
    if g.n_nodes < 1:
        raise TooSmallGraphError("degree histogram needs at least one node")
    vals = degree_values(g)
    return histogram(vals, bins or BinSpec.integers(0, int(vals.max())))


def clustering_sample(g: Graph, bins: BinSpec | None = None) -> MetricSample:
    if g.n_nodes < 1:
        raise TooSmallGraphError("clustering histogram needs at least one node")
    return histogram(clustering_values(g), bins or BinSpec(0.0, 1.0, 100))


def spectral_sample(g: Graph, bins: BinSpec | None = None) -> MetricSample:
    if g.n_nodes < 1:
        raise TooSmallGraphError("spectrum needs at least one node")
    return histogram(spectrum_values(g), bins or BinSpec(0.0, 2.0, 200))


def paths_sample(g: Graph, bins: BinSpec | None = None) -> MetricSample:
    vals = path_length_values(g)
    if vals.size == 0:
        raise TooSmallGraphError("graph has no reachable node pairs")
    return histogram(vals, bins or BinSpec.integers(1, int(vals.max())))
