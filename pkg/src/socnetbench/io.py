"""Edgelist and dataset directory formats, plus dataset summaries.

A dataset directory holds one ``<id>.edges`` file per graph and a
``manifest.json`` describing ids, sizes, provenance, failures and the seed
that produced it. Node ids inside each file are the re-indexed ids.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (EmptyDatasetError, EmptyGraphError, IntegrityError,
                     MalformedInputError, ParseError)
from .graph import Graph, build_graph, density

log = logging.getLogger(__name__)

MANIFEST = "manifest.json"
PROVENANCES = ("sampled", "rmat", "ingested")


@dataclass
class Dataset:
    graphs: list
    ids: list
    provenance: list
    failures: list = field(default_factory=list)
    name: str = "dataset"
    master_seed: int | None = None
    # per-graph extra manifest fields (fitted parameters, size ratios, ...)
    meta: list | None = None
    # dataset-level config echo
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        self.graphs = list(self.graphs)
        self.ids = [str(i) for i in self.ids]
        self.provenance = list(self.provenance)
        self.failures = [(str(i), str(r)) for i, r in self.failures]
        if self.meta is None:
            self.meta = [{} for _ in self.graphs]
        if not (len(self.graphs) == len(self.ids) == len(self.provenance) == len(self.meta)):
            raise MalformedInputError("graphs, ids, provenance and meta must align")
        if len(set(self.ids)) != len(self.ids):
            raise MalformedInputError("dataset ids must be unique")
        if {i for i, _ in self.failures} & set(self.ids):
            raise MalformedInputError("failure ids overlap graph ids")
        bad = set(self.provenance) - set(PROVENANCES)
        if bad:
            raise MalformedInputError(f"unknown provenance {sorted(bad)}")

    def __len__(self):
        return len(self.graphs)

    def subset(self, indices, name=None) -> "Dataset":
        idx = list(indices)
        return Dataset(
            graphs=[self.graphs[i] for i in idx],
            ids=[self.ids[i] for i in idx],
            provenance=[self.provenance[i] for i in idx],
            failures=[],
            name=name or self.name,
            master_seed=self.master_seed,
            meta=[dict(self.meta[i]) for i in idx],
            info=dict(self.info),
        )

    @classmethod
    def from_graphs(cls, graphs, provenance="ingested", prefix="graph", **kw) -> "Dataset":
        graphs = list(graphs)
        return cls(graphs, [f"{prefix}_{k}" for k in range(len(graphs))],
                   [provenance] * len(graphs), **kw)


def parse_edge_pairs(text: str) -> list:
    pairs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise ParseError(f"expected two node ids, got {line!r}", lineno)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise ParseError(f"negative node id in {line!r}", lineno)
        pairs.append((u, v))
    return pairs


def read_edgelist(text: str) -> Graph:
    """Parse whitespace-separated ``u v`` lines; ``#`` starts a comment line."""
    pairs = parse_edge_pairs(text)
    if not pairs:
        raise EmptyGraphError("edgelist contains no edges")
    return build_graph(pairs)


def read_edgelist_file(path) -> Graph:
    return read_edgelist(Path(path).read_text(encoding="utf-8"))


def format_edgelist(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges.tolist())


def _manifest(ds: Dataset) -> dict:
    graphs = []
    for gid, g, prov, meta in zip(ds.ids, ds.graphs, ds.provenance, ds.meta):
        entry = {"id": gid, "n_nodes": g.n_nodes, "n_edges": g.n_edges, "provenance": prov}
        entry.update(meta)
        graphs.append(entry)
    out = {
        "name": ds.name,
        "master_seed": ds.master_seed,
        "n_networks": len(ds.graphs),
        "graphs": graphs,
        "failures": [{"id": i, "reason": r} for i, r in ds.failures],
    }
    if ds.info:
        out["info"] = ds.info
    return out


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def write_dataset(ds: Dataset, destination) -> dict:
    dest = Path(destination)
    try:
        dest.mkdir(parents=True, exist_ok=True)
        for gid, g in zip(ds.ids, ds.graphs):
            with open(dest / f"{gid}.edges", "w", encoding="utf-8", newline="\n") as fh:
                fh.write(format_edgelist(g))
        manifest = _manifest(ds)
        with open(dest / MANIFEST, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(_dump_json(manifest))
    except OSError as exc:
        raise OSError(f"writing dataset to {dest}: {exc}") from exc
    return manifest


def read_dataset(source) -> Dataset:
    src = Path(source)
    mpath = src / MANIFEST
    if not mpath.is_file():
        raise IntegrityError(f"{mpath}: manifest not found")
    manifest = json.loads(mpath.read_text(encoding="utf-8"))
    graphs, ids, prov, meta = [], [], [], []
    for entry in manifest.get("graphs", []):
        entry = dict(entry)
        gid = entry.pop("id")
        n = entry.pop("n_nodes")
        m = entry.pop("n_edges")
        fpath = src / f"{gid}.edges"
        if not fpath.is_file():
            raise IntegrityError(f"{fpath}: listed in manifest but missing")
        try:
            pairs = parse_edge_pairs(fpath.read_text(encoding="utf-8"))
            g = build_graph(pairs, n)
        except MalformedInputError as exc:
            raise IntegrityError(f"{fpath}: {exc}") from exc
        if g.n_edges != m:
            raise IntegrityError(f"{fpath}: manifest says {m} edges, file has {g.n_edges}")
        graphs.append(g)
        ids.append(gid)
        prov.append(entry.pop("provenance"))
        meta.append(entry)
    listed = {f"{i}.edges" for i in ids}
    for p in sorted(src.glob("*.edges")):
        if p.name not in listed:
            log.warning("ignoring unlisted file %s", p)
    return Dataset(
        graphs=graphs, ids=ids, provenance=prov,
        failures=[(f["id"], f["reason"]) for f in manifest.get("failures", [])],
        name=manifest.get("name", src.name),
        master_seed=manifest.get("master_seed"),
        meta=meta,
        info=manifest.get("info", {}),
    )


def ingest_directory(source, pattern="*.edges", name=None) -> Dataset:
    """Load a directory of bare edgelists (e.g. external generator output)."""
    src = Path(source)
    files = sorted(src.glob(pattern))
    graphs = [read_edgelist_file(p) for p in files]
    return Dataset(graphs, [p.stem for p in files], ["ingested"] * len(files),
                   name=name or src.name)


@dataclass(frozen=True)
class DatasetSummary:
    n_networks: int
    min_nodes: int
    max_nodes: int
    min_density: float
    max_density: float
    min_communities: int
    max_communities: int

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def community_count(g: Graph, runs: int, seed) -> int:
    """Louvain community count of the highest-modularity run out of ``runs``.

    Edgeless graphs count every node as its own community.
    """
    from .dynamics import louvain, modularity
    from .rng import derive_rng

    if g.n_edges == 0:
        return g.n_nodes
    best = None
    for r in range(runs):
        p = louvain(g, 1.0, derive_rng(seed, "summary", g.content_hash(), r))
        q = modularity(g, p, 1.0)
        if best is None or q > best[0] + 1e-12:
            best = (q, p.n_communities)
    return best[1]


def summarize_dataset(ds: Dataset, community_runs: int = 5, seed: int = 0) -> DatasetSummary:
    if not ds.graphs:
        raise EmptyDatasetError("cannot summarize an empty dataset")
    if any(g.n_nodes == 0 for g in ds.graphs):
        raise EmptyGraphError("dataset contains an empty graph")
    nodes = [g.n_nodes for g in ds.graphs]
    dens = [density(g) for g in ds.graphs]
    comms = [community_count(g, community_runs, seed) for g in ds.graphs]
    return DatasetSummary(
        n_networks=len(ds.graphs),
        min_nodes=int(min(nodes)), max_nodes=int(max(nodes)),
        min_density=float(min(dens)), max_density=float(max(dens)),
        min_communities=int(min(comms)), max_communities=int(max(comms)),
    )


def flat_edgelist(ds: Dataset) -> tuple[np.ndarray, np.ndarray]:
    """Concatenate all graphs into one edge array with cumulative node offsets.

    Returns ``(edges, offsets)`` where graph ``k`` occupies node ids
    ``offsets[k]:offsets[k+1]``.
    """
    offsets = np.zeros(len(ds.graphs) + 1, dtype=np.int64)
    np.cumsum([g.n_nodes for g in ds.graphs], out=offsets[1:])
    parts = [g.edges + off for g, off in zip(ds.graphs, offsets[:-1])]
    edges = np.concatenate(parts) if parts else np.zeros((0, 2), np.int64)
    return edges, offsets


