"""MMD between sets of metric samples and the eight-metric evaluation suite."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field, replace
from functools import partial
from pathlib import Path

import numpy as np
from scipy.spatial.distance import cdist, pdist

from .dynamics import SirConfig, louvain_counts, sir_values
from .errors import BenchError, EmptyInputError, IncompatibleSampleError, MalformedInputError
from .graph import Graph, largest_component
from .io import Dataset
from .metrics import (BinSpec, MetricSample, clustering_values, degree_values, histogram,
                      path_length_values, spectrum_values)
from .parallel import pmap
from .rng import derive_rng

METRICS = ("nodes", "degree", "clustering", "spectral", "steps", "saturation", "paths", "louvain")
KERNELS = ("gaussian", "gaussian_tv")
MEDIAN = "median-heuristic"


@dataclass(frozen=True)
class KernelConfig:
    kind: str = "gaussian"
    bandwidth: float | str = 1.0

    def __post_init__(self):
        if self.kind not in KERNELS:
            raise MalformedInputError(f"unknown kernel {self.kind!r}")
        if self.bandwidth != MEDIAN and not (isinstance(self.bandwidth, (int, float)) and self.bandwidth > 0):
            raise MalformedInputError(f"bandwidth must be positive or {MEDIAN!r}")


def _distances(x: np.ndarray, y: np.ndarray, kind: str) -> np.ndarray:
    if kind == "gaussian":
        return cdist(x, y, "euclidean")
    return 0.5 * cdist(x, y, "cityblock")


def _stack(samples) -> np.ndarray:
    return np.vstack([s.vector() for s in samples]).astype(np.float64)


def _check_compatible(samples):
    first = samples[0]
    for s in samples[1:]:
        if not first.compatible_with(s):
            raise IncompatibleSampleError(
                f"cannot compare {first.kind}/{first.bin_domain} with {s.kind}/{s.bin_domain}")


def kernel_value(x: MetricSample, y: MetricSample, k: KernelConfig) -> float:
    """``exp(-dist^2 / (2 bandwidth^2))`` with Euclidean or total-variation distance."""
    _check_compatible([x, y])
    if k.bandwidth == MEDIAN:
        raise MalformedInputError("resolve the median heuristic before evaluating single pairs")
    d = _distances(x.vector()[None, :], y.vector()[None, :], k.kind)[0, 0]
    return math.exp(-d * d / (2.0 * k.bandwidth ** 2))


def resolve_bandwidth(samples, k: KernelConfig) -> float:
    """Explicit bandwidth, or the median pairwise distance of the pooled samples (1.0 if zero)."""
    if k.bandwidth != MEDIAN:
        return float(k.bandwidth)
    x = _stack(samples)
    if len(x) < 2:
        return 1.0
    d = pdist(x, "euclidean") if k.kind == "gaussian" else 0.5 * pdist(x, "cityblock")
    med = float(np.median(d))
    return med if med > 0 else 1.0


def _mean_kernel(x, y, kind, bw) -> float:
    d = _distances(x, y, kind)
    kmat = np.exp(-(d * d) / (2.0 * bw * bw))
    return math.fsum(kmat.ravel().tolist()) / kmat.size


def mmd_squared(set_a, set_b, k: KernelConfig, bandwidth: float | None = None) -> float:
    """Biased (V-statistic) squared MMD, clamped at zero.

    Kernel means are summed exactly with ``math.fsum`` so the result does not
    depend on summation order.
    """
    set_a, set_b = list(set_a), list(set_b)
    if not set_a or not set_b:
        raise EmptyInputError("MMD needs two non-empty sample sets")
    _check_compatible(set_a + set_b)
    bw = bandwidth if bandwidth is not None else resolve_bandwidth(set_a + set_b, k)
    x, y = _stack(set_a), _stack(set_b)
    val = _mean_kernel(x, x, k.kind, bw) + _mean_kernel(y, y, k.kind, bw) - 2.0 * _mean_kernel(x, y, k.kind, bw)
    return max(val, 0.0)


def default_kernels() -> dict:
    kernels = {m: KernelConfig("gaussian", 1.0) for m in METRICS}
    kernels["nodes"] = KernelConfig("gaussian", MEDIAN)
    kernels["spectral"] = KernelConfig("gaussian_tv", 1.0)
    return kernels


@dataclass(frozen=True)
class SuiteConfig:
    kernels: dict = field(default_factory=default_kernels)
    clustering_bins: int = 100
    spectral_bins: int = 200
    saturation_bins: int = 20
    sir: SirConfig = field(default_factory=SirConfig)
    louvain_resolution: float = 1.0
    louvain_runs: int = 5
    seed: int = 0
    # True, False, or "auto" (only candidates with "ingested" provenance)
    largest_component: bool | str = "auto"

    def __post_init__(self):
        missing = set(METRICS) - set(self.kernels)
        if missing:
            raise MalformedInputError(f"no kernel for {sorted(missing)}")
        if self.largest_component not in (True, False, "auto"):
            raise MalformedInputError("largest_component must be true, false or 'auto'")

    def as_dict(self) -> dict:
        d = asdict(self)
        d["kernels"] = {m: asdict(self.kernels[m]) for m in METRICS}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteConfig":
        d = dict(d)
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise MalformedInputError(f"unknown suite config fields {sorted(unknown)}")
        kernels = default_kernels()
        for m, kc in d.pop("kernels", {}).items():
            if m not in METRICS:
                raise MalformedInputError(f"unknown metric {m!r}")
            kernels[m] = KernelConfig(**kc)
        sir = SirConfig(**d.pop("sir", {}))
        return cls(kernels=kernels, sir=sir, **d)

    @classmethod
    def load(cls, path) -> "SuiteConfig":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def with_overrides(self, **kw) -> "SuiteConfig":
        return replace(self, **kw)


@dataclass
class MmdReport:
    scores: dict
    config: dict
    dataset: str = ""
    model: str = ""

    HEADER = ("dataset", "model") + tuple(f"mmd_{m}" for m in METRICS)

    def __getattr__(self, name):
        if name.startswith("mmd_") and name[4:] in METRICS:
            return self.scores[name[4:]]
        raise AttributeError(name)

    def row(self) -> list:
        return [self.dataset, self.model] + [repr(float(self.scores[m])) for m in METRICS]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.HEADER)
        w.writerow(self.row())
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"dataset": self.dataset, "model": self.model,
                "scores": {f"mmd_{m}": float(self.scores[m]) for m in METRICS},
                "config": self.config}

    def write(self, out_dir) -> tuple[Path, Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        jpath, cpath = out / "report.json", out / "report.csv"
        with open(jpath, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n")
        with open(cpath, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_csv())
        return jpath, cpath


def graph_values(g: Graph, cfg: SuiteConfig) -> dict:
    """Raw per-graph values for every metric; failures are kept as error strings.

    Stochastic metrics draw from streams keyed by the graph's content, so a
    graph gets the same values wherever it appears.
    """
    key = g.content_hash()
    out = {"nodes": np.array([g.n_nodes])}
    for name, fn in (("degree", degree_values), ("clustering", clustering_values),
                     ("spectral", spectrum_values), ("paths", path_length_values)):
        try:
            vals = fn(g)
            if vals.size == 0:
                raise EmptyInputError(f"no {name} values")
            out[name] = vals
        except BenchError as exc:
            out[name] = f"{type(exc).__name__}: {exc}"
    try:
        steps, sat = sir_values(g, cfg.sir, derive_rng(cfg.seed, "sir", key))
        out["steps"], out["saturation"] = steps, sat
    except BenchError as exc:
        out["steps"] = out["saturation"] = f"{type(exc).__name__}: {exc}"
    try:
        out["louvain"] = louvain_counts(g, cfg.louvain_resolution, cfg.louvain_runs,
                                        derive_rng(cfg.seed, "louvain", key))
    except BenchError as exc:
        out["louvain"] = f"{type(exc).__name__}: {exc}"
    return out


def shared_bins(values_a, values_b, cfg: SuiteConfig) -> dict:
    def vmax(metric):
        vs = [v for v in values_a + values_b if not isinstance(v[metric], str)]
        return int(max(int(np.max(v[metric])) for v in vs)) if vs else 1

    return {
        "degree": BinSpec.integers(0, vmax("degree")),
        "clustering": BinSpec(0.0, 1.0, cfg.clustering_bins),
        "spectral": BinSpec(0.0, 2.0, cfg.spectral_bins),
        "steps": BinSpec.integers(0, cfg.sir.max_iterations),
        "saturation": BinSpec(0.0, 1.0, cfg.saturation_bins),
        "paths": BinSpec.integers(1, vmax("paths")),
        "louvain": BinSpec.integers(1, vmax("louvain")),
    }


def _use_lcc(provenance: str, mode) -> bool:
    return mode is True or (mode == "auto" and provenance == "ingested")


def prepare_candidate(ds: Dataset, mode) -> list:
    return [largest_component(g) if _use_lcc(p, mode) else g
            for g, p in zip(ds.graphs, ds.provenance)]


def evaluate_suite(reference: Dataset, candidate: Dataset, cfg: SuiteConfig | None = None,
                   workers: int = 1, dataset_name: str | None = None,
                   model_name: str | None = None) -> MmdReport:
    """Score ``candidate`` against ``reference`` on all eight metrics."""
    cfg = cfg or SuiteConfig()
    if not reference.graphs or not candidate.graphs:
        raise EmptyInputError("both datasets must be non-empty")
    ref_graphs = list(reference.graphs)
    cand_graphs = prepare_candidate(candidate, cfg.largest_component)
    fn = partial(graph_values, cfg=cfg)
    ref_vals = pmap(fn, ref_graphs, workers)
    cand_vals = pmap(fn, cand_graphs, workers)
    bins = shared_bins(ref_vals, cand_vals, cfg)

    scores, bandwidths, excluded = {}, {}, {}
    for metric in METRICS:
        sides = []
        for label, ids, vals in (("reference", reference.ids, ref_vals), ("candidate", candidate.ids, cand_vals)):
            samples = []
            for gid, v in zip(ids, vals):
                if isinstance(v[metric], str):
                    excluded.setdefault(metric, []).append({"side": label, "id": gid, "reason": v[metric]})
                elif metric == "nodes":
                    samples.append(MetricSample.scalar(v[metric][0]))
                else:
                    samples.append(histogram(v[metric], bins[metric]))
            if not samples:
                raise EmptyInputError(f"no {label} graph yields a {metric} sample")
            sides.append(samples)
        kern = cfg.kernels[metric]
        bw = resolve_bandwidth(sides[0] + sides[1], kern)
        bandwidths[metric] = bw
        scores[metric] = mmd_squared(sides[0], sides[1], kern, bandwidth=bw)

    config = cfg.as_dict()
    config["resolved_bandwidths"] = bandwidths
    config["bins"] = {m: list(b.as_tuple()) for m, b in bins.items()}
    config["datasets"] = {
        "reference": {"name": reference.name, "n_graphs": len(reference.graphs),
                      "n_failures": len(reference.failures), "master_seed": reference.master_seed},
        "candidate": {"name": candidate.name, "n_graphs": len(candidate.graphs),
                      "n_failures": len(candidate.failures), "master_seed": candidate.master_seed,
                      "largest_component_applied": sum(
                          _use_lcc(p, cfg.largest_component) for p in candidate.provenance)},
    }
    config["excluded"] = excluded
    return MmdReport(scores=scores, config=config,
                     dataset=dataset_name or reference.name, model=model_name or candidate.name)
