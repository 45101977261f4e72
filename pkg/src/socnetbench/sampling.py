"""Exploration sampling with replacement (ESWR) via Metropolis-Hastings random walks."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import partial

import numpy as np

from .errors import InsufficientSourceError, MalformedInputError, StallError
from .graph import Graph, connected_components, induced_subgraph
from .io import Dataset
from .parallel import pmap
from .rng import derive_rng


@dataclass(frozen=True)
class SamplerConfig:
    n_networks: int = 200
    size_mean: float = 400.0
    size_stddev: float = 50.0
    min_size: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.size_mean <= 0:
            raise MalformedInputError("size_mean must be positive")
        if self.size_stddev < 0:
            raise MalformedInputError("size_stddev must be non-negative")
        if self.min_size < 2:
            raise MalformedInputError("min_size must be at least 2")
        if self.n_networks < 1:
            raise MalformedInputError("n_networks must be at least 1")


def sample_size(cfg: SamplerConfig, rng: np.random.Generator, max_size: int | None = None) -> int:
    """Normal(mean, stddev) draw, rounded and clamped to ``[min_size, max_size]``."""
    n = int(np.rint(rng.normal(cfg.size_mean, cfg.size_stddev)))
    n = max(n, cfg.min_size)
    if max_size is not None:
        n = min(n, int(max_size))
    return n


def _largest_component_nodes(g: Graph) -> np.ndarray:
    lab = connected_components(g)
    if lab.n_components == 0:
        return np.zeros(0, np.int64)
    return np.flatnonzero(lab.labels == int(np.argmax(lab.component_sizes)))


def _walker(g: Graph, rng: np.random.Generator, start: int):
    """Yield MHRW positions forever, starting with ``start``.

    At node v a uniform neighbor w is proposed and accepted with probability
    min(1, d(v)/d(w)); on rejection the walk stays at v.
    """
    indptr = g.indptr.tolist()
    indices = g.indices.tolist()
    v = start
    yield v
    while True:
        block = rng.random((4096, 2)).tolist()
        for u_pick, u_acc in block:
            lo = indptr[v]
            dv = indptr[v + 1] - lo
            if dv:
                w = indices[lo + int(u_pick * dv)]
                dw = indptr[w + 1] - indptr[w]
                if u_acc * dw < dv:
                    v = w
            yield v


def mhrw_walk(g: Graph, n_steps: int, rng: np.random.Generator, start: int | None = None) -> np.ndarray:
    """Trajectory of ``n_steps`` transitions (``n_steps + 1`` positions)."""
    if start is None:
        nodes = _largest_component_nodes(g)
        start = int(nodes[rng.integers(len(nodes))])
    walk = _walker(g, rng, start)
    return np.fromiter((next(walk) for _ in range(n_steps + 1)), dtype=np.int64, count=n_steps + 1)


def mhrw_sample(g: Graph, target_n: int, rng: np.random.Generator, step_budget: int | None = None) -> set:
    """Distinct nodes visited by an MHRW until ``target_n`` have been seen.

    The walk starts at a uniform node of the largest component.
    """
    nodes = _largest_component_nodes(g)
    if len(nodes) < target_n:
        raise InsufficientSourceError(
            f"largest component has {len(nodes)} nodes, {target_n} requested")
    if step_budget is None:
        step_budget = 1000 * target_n
    start = int(nodes[rng.integers(len(nodes))])
    seen = {start}
    walk = _walker(g, rng, start)
    next(walk)
    steps = 0
    while len(seen) < target_n:
        if steps >= step_budget:
            raise StallError(f"walk stalled at {len(seen)}/{target_n} nodes after {steps} steps")
        seen.add(next(walk))
        steps += 1
    return seen


def _sample_one(k: int, g: Graph, cfg: SamplerConfig):
    rng = derive_rng(cfg.seed, "eswr", k)
    size = sample_size(cfg, rng, max_size=g.n_nodes)
    try:
        nodes = mhrw_sample(g, size, rng)
    except (InsufficientSourceError, StallError) as exc:
        return None, size, f"{type(exc).__name__}: {exc}"
    return induced_subgraph(g, nodes), size, None


def eswr(g: Graph, cfg: SamplerConfig, workers: int = 1, name: str = "eswr") -> Dataset:
    """Draw ``cfg.n_networks`` MHRW sub-networks from ``g`` with replacement.

    Sample k uses its own stream derived from ``(cfg.seed, k)``, so the first
    k samples do not change when more are requested. Failed samples become
    failure records.
    """
    results = pmap(partial(_sample_one, g=g, cfg=cfg), range(cfg.n_networks), workers)
    graphs, ids, meta, failures = [], [], [], []
    for k, (sub, size, err) in enumerate(results):
        gid = f"sample_{k}"
        if err is not None:
            failures.append((gid, err))
            continue
        graphs.append(sub)
        ids.append(gid)
        meta.append({"source_ratio": size / g.n_nodes})
    info = {"sampler": asdict(cfg), "source": {"n_nodes": g.n_nodes, "n_edges": g.n_edges}}
    return Dataset(graphs, ids, ["sampled"] * len(graphs), failures, name=name,
                   master_seed=cfg.seed, meta=meta, info=info)
