"""SIR spread simulation and Louvain community detection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MalformedInputError, TooSmallGraphError, UndefinedModularityError
from .graph import Graph
from .metrics import BinSpec, MetricSample, histogram

SUSCEPTIBLE, INFECTED, RECOVERED = 0, 1, 2


@dataclass(frozen=True)
class SirConfig:
    n_seeds: int = 2
    infect_prob: float = 0.04
    infectious_period: int = 5
    max_iterations: int = 100
    n_runs: int = 20

    def __post_init__(self):
        if not 0.0 <= self.infect_prob <= 1.0:
            raise MalformedInputError("infect_prob must lie in [0, 1]")
        if self.infectious_period < 1 or self.n_seeds < 1 or self.max_iterations < 1 or self.n_runs < 1:
            raise MalformedInputError("infectious_period, n_seeds, max_iterations and n_runs must be >= 1")


@dataclass(frozen=True)
class SirResult:
    steps: int
    saturation: float


def sir_states(g: Graph, cfg: SirConfig, rng: np.random.Generator, seeds=None):
    """Yield the state vector at iteration 0 and after every later iteration.

    Updates are synchronous: every node Infected at the start of an iteration
    tries each Susceptible neighbor with probability ``infect_prob``, then
    nodes that have completed ``infectious_period`` infected iterations
    recover. Stops once nobody is Infected or ``max_iterations`` is reached.
    """
    n = g.n_nodes
    if seeds is None:
        if n < cfg.n_seeds:
            raise TooSmallGraphError(f"{n} nodes cannot hold {cfg.n_seeds} seeds")
        seeds = rng.choice(n, size=cfg.n_seeds, replace=False)
    seeds = np.asarray(seeds, dtype=np.int64)
    src = np.concatenate([g.edges[:, 0], g.edges[:, 1]])
    dst = np.concatenate([g.edges[:, 1], g.edges[:, 0]])
    state = np.full(n, SUSCEPTIBLE, dtype=np.int8)
    infected_at = np.zeros(n, dtype=np.int64)
    state[seeds] = INFECTED
    yield state.copy()
    t = 0
    while t < cfg.max_iterations and np.any(state == INFECTED):
        t += 1
        live = (state[src] == INFECTED) & (state[dst] == SUSCEPTIBLE)
        targets = dst[live]
        hit = targets[rng.random(targets.size) < cfg.infect_prob]
        recover = (state == INFECTED) & (t - infected_at >= cfg.infectious_period)
        state[hit] = INFECTED
        infected_at[hit] = t
        state[recover] = RECOVERED
        yield state.copy()


def sir_run(g: Graph, cfg: SirConfig, rng: np.random.Generator, seeds=None) -> SirResult:
    steps, last = -1, None
    for last in sir_states(g, cfg, rng, seeds):
        steps += 1
    return SirResult(steps=steps, saturation=float(np.mean(last == RECOVERED)))


def sir_values(g: Graph, cfg: SirConfig, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    runs = [sir_run(g, cfg, rng) for _ in range(cfg.n_runs)]
    return (np.array([r.steps for r in runs], dtype=np.int64),
            np.array([r.saturation for r in runs]))


def sir_sample(g: Graph, cfg: SirConfig, rng: np.random.Generator,
               steps_bins: BinSpec | None = None,
               saturation_bins: BinSpec | None = None) -> tuple[MetricSample, MetricSample]:
    steps, sat = sir_values(g, cfg, rng)
    return (histogram(steps, steps_bins or BinSpec.integers(0, cfg.max_iterations)),
            histogram(sat, saturation_bins or BinSpec(0.0, 1.0, 20)))


@dataclass(frozen=True, eq=False)
class Partition:
    labels: np.ndarray

    @property
    def n_communities(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        """Relabel to contiguous ids in order of first appearance."""
        labels = np.asarray(labels)
        _, first, inv = np.unique(labels, return_index=True, return_inverse=True)
        rank = np.empty(len(first), dtype=np.int64)
        rank[np.argsort(first)] = np.arange(len(first))
        return cls(rank[inv.ravel()])

    def __eq__(self, other):
        return isinstance(other, Partition) and np.array_equal(self.labels, other.labels)


def modularity(g: Graph, p: Partition, resolution: float = 1.0) -> float:
    """Newman modularity ``sum_c [e_c/m - resolution * (d_c/2m)^2]``."""
    m = g.n_edges
    if m == 0:
        raise UndefinedModularityError("modularity is undefined without edges")
    lab = np.asarray(p.labels)
    k = int(lab.max()) + 1
    e = g.edges
    inside = np.bincount(lab[e[:, 0]][lab[e[:, 0]] == lab[e[:, 1]]], minlength=k)
    deg = np.bincount(lab, weights=g.degrees, minlength=k)
    return float(np.sum(inside / m) - resolution * np.sum((deg / (2.0 * m)) ** 2))


_EPS = 1e-12


def _local_moves(nbrs, k, m, resolution, order):
    """Greedy node moves on a weighted graph; returns (community per node, moved?)."""
    n = len(nbrs)
    comm = list(range(n))
    tot = list(k)
    scale = resolution / (2.0 * m)
    moved_any = False
    improved = True
    while improved:
        improved = False
        for i in order:
            ci = comm[i]
            ki = k[i]
            links = {}
            for j, w in nbrs[i]:
                cj = comm[j]
                links[cj] = links.get(cj, 0.0) + w
            tot[ci] -= ki
            best_c = ci
            best_gain = links.get(ci, 0.0) - scale * tot[ci] * ki
            for c in sorted(links):
                if c == ci:
                    continue
                gain = links[c] - scale * tot[c] * ki
                if gain > best_gain + _EPS:
                    best_c, best_gain = c, gain
            tot[best_c] += ki
            if best_c != ci:
                comm[i] = best_c
                improved = moved_any = True
    return comm, moved_any


def _aggregate(nbrs, loops, comm):
    """Collapse communities into weighted super-nodes."""
    ids = {}
    for c in comm:
        if c not in ids:
            ids[c] = len(ids)
    node_to_super = [ids[c] for c in comm]
    n_super = len(ids)
    new_loops = [0.0] * n_super
    weights = [dict() for _ in range(n_super)]
    for i, adj in enumerate(nbrs):
        si = node_to_super[i]
        new_loops[si] += loops[i]
        for j, w in adj:
            sj = node_to_super[j]
            if si == sj:
                if i < j:
                    new_loops[si] += w
            else:
                weights[si][sj] = weights[si].get(sj, 0.0) + w
    new_nbrs = [sorted(d.items()) for d in weights]
    return new_nbrs, new_loops, node_to_super


def louvain_levels(g: Graph, resolution: float = 1.0, rng: np.random.Generator | None = None):
    """Yield the partition of the original nodes after every aggregation level."""
    if g.n_edges == 0:
        raise UndefinedModularityError("louvain needs at least one edge")
    rng = rng if rng is not None else np.random.default_rng(0)
    m = float(g.n_edges)
    nbrs = [[(int(j), 1.0) for j in g.neighbors(v)] for v in range(g.n_nodes)]
    loops = [0.0] * g.n_nodes
    membership = np.arange(g.n_nodes)
    while True:
        k = [2.0 * loops[i] + sum(w for _, w in adj) for i, adj in enumerate(nbrs)]
        order = rng.permutation(len(nbrs)).tolist()
        comm, moved = _local_moves(nbrs, k, m, resolution, order)
        if not moved:
            return
        nbrs, loops, node_to_super = _aggregate(nbrs, loops, comm)
        membership = np.asarray(node_to_super)[membership]
        yield Partition.from_labels(membership)


def louvain(g: Graph, resolution: float = 1.0, rng: np.random.Generator | None = None) -> Partition:
    """Two-phase Louvain modularity optimization.

    Each level visits nodes in a random order drawn from ``rng`` and moves a
    node to the neighboring community with the largest strictly positive
    modularity gain (ties go to the lowest community id). Communities are
    then collapsed and the process repeats until a level moves nothing.
    """
    part = Partition(np.arange(g.n_nodes))
    for part in louvain_levels(g, resolution, rng):
        pass
    return part


def louvain_counts(g: Graph, resolution: float, n_runs: int, rng: np.random.Generator) -> np.ndarray:
    return np.array([louvain(g, resolution, rng).n_communities for _ in range(n_runs)], dtype=np.int64)


def louvain_sample(g: Graph, resolution: float = 1.0, n_runs: int = 5,
                   rng: np.random.Generator | None = None, bins: BinSpec | None = None) -> MetricSample:
    counts = louvain_counts(g, resolution, n_runs, rng if rng is not None else np.random.default_rng(0))
    return histogram(counts, bins or BinSpec.integers(1, int(counts.max())))
