"""R-MAT fitting from top-level quadrant proportions, generation, and dataset mirroring."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import partial

import numpy as np

from .errors import EmptyQuadrantError, MalformedInputError, SaturationError
from .graph import Graph, induced_subgraph
from .io import Dataset
from .parallel import pmap
from .rng import derive_rng


@dataclass(frozen=True)
class RmatParams:
    a: float
    b: float
    c: float
    d: float
    edge_factor: float
    scale: int
    target_nodes: int

    def __post_init__(self):
        probs = (self.a, self.b, self.c, self.d)
        if min(probs) < 0 or abs(sum(probs) - 1.0) > 1e-9:
            raise MalformedInputError(f"quadrant probabilities {probs} must be >= 0 and sum to 1")
        if self.scale < 1 or self.edge_factor < 0:
            raise MalformedInputError("scale must be >= 1 and edge_factor >= 0")
        if not (2 ** (self.scale - 1) < self.target_nodes <= 2 ** self.scale):
            raise MalformedInputError(
                f"target_nodes {self.target_nodes} not in (2^{self.scale - 1}, 2^{self.scale}]")

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])

    def as_dict(self) -> dict:
        return asdict(self)


def scale_for(n: int) -> int:
    """Smallest ``s >= 1`` with ``2**s >= n``."""
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1


def quadrant_counts(g: Graph) -> np.ndarray:
    """Nonzero entries of the symmetric adjacency matrix per top-level quadrant (TL, TR, BL, BR)."""
    half = 2 ** (scale_for(g.n_nodes) - 1)
    both = np.concatenate([g.edges, g.edges[:, ::-1]])
    q = 2 * (both[:, 0] >= half) + (both[:, 1] >= half)
    return np.bincount(q, minlength=4)


def fit_rmat(g: Graph) -> RmatParams:
    if g.n_nodes < 2 or g.n_edges < 1:
        raise MalformedInputError("fitting needs at least 2 nodes and 1 edge")
    counts = quadrant_counts(g)
    if np.any(counts == 0):
        names = [n for n, c in zip(("top-left", "top-right", "bottom-left", "bottom-right"), counts) if c == 0]
        raise EmptyQuadrantError(f"empty quadrant(s): {', '.join(names)}")
    total = int(counts.sum())
    a, b, c, d = (int(x) / total for x in counts)
    # b and c come from mirrored entries and are equal by construction
    return RmatParams(a=a, b=b, c=c, d=d, edge_factor=g.n_edges / g.n_nodes,
                      scale=scale_for(g.n_nodes), target_nodes=g.n_nodes)


def _place(params: RmatParams, k: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Descend ``scale`` levels for ``k`` placements; returns row and column ids."""
    cdf = np.cumsum(params.probabilities)
    cdf[-1] = 1.0
    quad = np.searchsorted(cdf, rng.random((k, params.scale)), side="right")
    quad = np.minimum(quad, 3)
    weights = 1 << np.arange(params.scale - 1, -1, -1, dtype=np.int64)
    rows = (quad >> 1) @ weights
    cols = (quad & 1) @ weights
    return rows, cols


def generate_rmat(params: RmatParams, rng: np.random.Generator, retry_factor: int = 100) -> Graph:
    """Sample an R-MAT graph with exactly ``params.target_nodes`` nodes.

    ``round(edge_factor * 2**scale)`` distinct undirected edges are placed;
    self-loops and duplicates are redrawn within a budget of
    ``retry_factor`` times the requested edge count. Then
    ``2**scale - target_nodes`` uniformly chosen nodes are deleted.
    """
    n_full = 2 ** params.scale
    want = int(round(params.edge_factor * n_full))
    budget = retry_factor * max(want, 1)
    keys = np.zeros(0, dtype=np.int64)
    attempts = 0
    while len(keys) < want:
        need = want - len(keys)
        if attempts + need > budget:
            raise SaturationError(
                f"placed {len(keys)}/{want} distinct edges within {budget} attempts")
        rows, cols = _place(params, need, rng)
        attempts += need
        lo, hi = np.minimum(rows, cols), np.maximum(rows, cols)
        k = lo[lo != hi] * n_full + hi[lo != hi]
        # first occurrence within the batch, in draw order
        _, first = np.unique(k, return_index=True)
        k = k[np.sort(first)]
        k = k[~np.isin(k, keys)]
        keys = np.concatenate([keys, k])
    edges = np.column_stack([keys // n_full, keys % n_full])
    edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    g = Graph(n_full, edges)
    drop = n_full - params.target_nodes
    if drop:
        removed = rng.choice(n_full, size=drop, replace=False)
        g = induced_subgraph(g, np.setdiff1d(np.arange(n_full), removed))
    return g


def _mirror_one(item, seed):
    gid, g = item
    try:
        params = fit_rmat(g)
    except (EmptyQuadrantError, MalformedInputError) as exc:
        return None, None, f"{type(exc).__name__}: {exc}"
    try:
        out = generate_rmat(params, derive_rng(seed, "rmat", gid))
    except SaturationError as exc:
        return None, params, f"{type(exc).__name__}: {exc}"
    return out, params, None


def mirror_dataset(reference: Dataset, seed: int, workers: int = 1, name: str | None = None) -> Dataset:
    """Fit and generate one R-MAT graph per reference graph.

    Fitting or generation failures are recorded, never raised.
    """
    if not reference.graphs:
        raise MalformedInputError("reference dataset is empty")
    results = pmap(partial(_mirror_one, seed=seed), list(zip(reference.ids, reference.graphs)), workers)
    graphs, ids, meta, failures = [], [], [], []
    for gid, (out, params, err) in zip(reference.ids, results):
        mid = f"rmat_{gid}"
        if err is not None:
            failures.append((mid, err))
            continue
        graphs.append(out)
        ids.append(mid)
        meta.append({"rmat": params.as_dict(), "reference_id": gid})
    info = {"reference": reference.name, "n_reference": len(reference.graphs),
            "failure_rate": len(failures) / len(reference.graphs)}
    return Dataset(graphs, ids, ["rmat"] * len(graphs), failures,
                   name=name or f"{reference.name}_rmat", master_seed=seed, meta=meta, info=info)
