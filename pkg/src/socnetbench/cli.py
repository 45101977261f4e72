"""Command-line entry point: sample, mirror, split, stats, mmd.

Exit codes: 0 success, 1 usage error, 2 data error, 3 partial failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .dynamics import SirConfig
from .errors import BenchError
from .io import (MANIFEST, Dataset, ingest_directory, read_dataset, read_edgelist_file,
                 summarize_dataset, write_dataset)
from .metrics import clustering_values, degree_values, path_length_values, spectrum_values
from .mmd import SuiteConfig, evaluate_suite
from .rmat import mirror_dataset
from .rng import derive_rng, fresh_seed
from .sampling import SamplerConfig, eswr

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_PARTIAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed(args) -> int:
    if args.seed is None:
        args.seed = fresh_seed()
        print(f"seed: {args.seed}", file=sys.stderr)
    return args.seed


def _require_out(args):
    if not args.out:
        raise UsageError("--out is required")
    return Path(args.out)


def load_dataset(path) -> Dataset:
    """Dataset directory with a manifest, or a bare directory of ``*.edges`` files."""
    p = Path(path)
    if p.is_dir() and not (p / MANIFEST).exists():
        return ingest_directory(p)
    return read_dataset(p)


def cmd_sample(args) -> int:
    seed = _seed(args)
    out = _require_out(args)
    g = read_edgelist_file(args.input)
    cfg = SamplerConfig(n_networks=args.count, size_mean=args.mu, size_stddev=args.sigma,
                        min_size=args.min_size, seed=seed)
    ds = eswr(g, cfg, workers=args.threads, name=args.name or Path(args.input).stem)
    write_dataset(ds, out)
    print(f"sampled {len(ds)} networks, {len(ds.failures)} failed -> {out}")
    return EXIT_PARTIAL if ds.failures else EXIT_OK


def cmd_mirror(args) -> int:
    seed = _seed(args)
    out = _require_out(args)
    ref = load_dataset(args.reference)
    ds = mirror_dataset(ref, seed, workers=args.threads, name=args.name)
    write_dataset(ds, out)
    n_fail = len(ds.failures)
    print(f"mirrored {len(ds)}/{len(ref)} networks, {n_fail} failed "
          f"(failure rate {n_fail / len(ref):.1%}) -> {out}")
    return EXIT_PARTIAL if n_fail else EXIT_OK


def cmd_split(args) -> int:
    seed = _seed(args)
    out = _require_out(args)
    if not 0.0 < args.ratio < 1.0:
        raise UsageError("--ratio must lie strictly between 0 and 1")
    ds = load_dataset(args.input)
    n = len(ds)
    perm = derive_rng(seed, "split").permutation(n)
    n_train = int(round(args.ratio * n))
    parts = {"train": sorted(perm[:n_train].tolist()), "test": sorted(perm[n_train:].tolist())}
    for label, idx in parts.items():
        sub = ds.subset(idx, name=f"{ds.name}_{label}")
        sub.master_seed = seed
        sub.info = {"split": {"part": label, "ratio": args.ratio, "seed": seed, "source": ds.name,
                              "source_master_seed": ds.master_seed}}
        write_dataset(sub, out / label)
    print(f"split {n} networks into {len(parts['train'])} train / {len(parts['test'])} test -> {out}")
    return EXIT_OK


RAW_METRICS = (("nodes", lambda g: np.array([g.n_nodes])), ("degree", degree_values),
               ("clustering", clustering_values), ("spectral", spectrum_values),
               ("paths", path_length_values))


def _write_raw(ds: Dataset, fh) -> int:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["graph_id", "metric", "value"])
    rows = 0
    for gid, g in zip(ds.ids, ds.graphs):
        for name, fn in RAW_METRICS:
            try:
                vals = fn(g)
            except BenchError:
                continue
            for v in vals.tolist():
                w.writerow([gid, name, repr(v)])
                rows += 1
    return rows


def cmd_stats(args) -> int:
    seed = _seed(args)
    ds = load_dataset(args.dataset)
    summary = summarize_dataset(ds, community_runs=args.community_runs, seed=seed)
    d = summary.as_dict()
    for k, v in d.items():
        print(f"{k:16s} {v}")
    if args.json:
        payload = {"dataset": ds.name, "summary": d, "seed": seed, "community_runs": args.community_runs}
        Path(args.json).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    if args.raw is not None:
        if args.raw == "-":
            _write_raw(ds, sys.stdout)
        else:
            with open(args.raw, "w", encoding="utf-8", newline="\n") as fh:
                _write_raw(ds, fh)
    return EXIT_OK


def _suite_config(args) -> SuiteConfig:
    cfg = SuiteConfig.load(args.config) if args.config else SuiteConfig()
    sir = cfg.sir
    overrides = {"n_seeds": args.sir_seeds, "infect_prob": args.sir_kappa,
                 "infectious_period": args.sir_gamma, "max_iterations": args.sir_max_iter,
                 "n_runs": args.sir_runs}
    sir = SirConfig(**{**sir.__dict__, **{k: v for k, v in overrides.items() if v is not None}})
    kw = {"sir": sir}
    if args.louvain_runs is not None:
        kw["louvain_runs"] = args.louvain_runs
    if args.lcc is not None:
        kw["largest_component"] = {"on": True, "off": False, "auto": "auto"}[args.lcc]
    if args.seed is not None:
        kw["seed"] = args.seed
    elif not args.config:
        kw["seed"] = _seed(args)
    return replace(cfg, **kw)


def cmd_mmd(args) -> int:
    out = _require_out(args)
    cfg = _suite_config(args)
    ref = load_dataset(args.reference)
    cand = load_dataset(args.candidate)
    report = evaluate_suite(ref, cand, cfg, workers=args.threads,
                            dataset_name=args.dataset_name, model_name=args.model_name)
    report.write(out)
    sys.stdout.write(report.to_csv())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="master seed (generated and printed if omitted)")
    common.add_argument("--threads", type=int, default=1, help="worker processes")
    common.add_argument("--out", default=None, help="output directory")

    p = _Parser(prog="socnetbench", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sample", parents=[common], help="ESWR sub-network dataset from one edgelist")
    s.add_argument("--input", required=True)
    s.add_argument("--count", type=int, default=200)
    s.add_argument("--mu", type=float, default=400.0)
    s.add_argument("--sigma", type=float, default=50.0)
    s.add_argument("--min-size", type=int, default=2)
    s.add_argument("--name", default=None)
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("mirror", parents=[common], help="fit and generate one R-MAT graph per reference graph")
    s.add_argument("--reference", required=True)
    s.add_argument("--name", default=None)
    s.set_defaults(func=cmd_mirror)

    s = sub.add_parser("split", parents=[common], help="deterministic train/test split of a dataset")
    s.add_argument("--input", required=True)
    s.add_argument("--ratio", type=float, default=0.8)
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("stats", parents=[common], help="size, density and community ranges of a dataset")
    s.add_argument("dataset")
    s.add_argument("--community-runs", type=int, default=5)
    s.add_argument("--json", default=None, help="also write the summary as JSON")
    s.add_argument("--raw", nargs="?", const="-", default=None,
                   help="dump per-graph metric values as CSV (to PATH, or stdout)")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("mmd", parents=[common], help="eight-metric MMD report")
    s.add_argument("--reference", required=True)
    s.add_argument("--candidate", required=True)
    s.add_argument("--config", default=None, help="suite config JSON")
    s.add_argument("--dataset-name", default=None)
    s.add_argument("--model-name", default=None)
    s.add_argument("--lcc", choices=("auto", "on", "off"), default=None,
                   help="largest-component extraction for candidate graphs")
    s.add_argument("--louvain-runs", type=int, default=None)
    s.add_argument("--sir-seeds", type=int, default=None)
    s.add_argument("--sir-kappa", type=float, default=None)
    s.add_argument("--sir-gamma", type=int, default=None)
    s.add_argument("--sir-max-iter", type=int, default=None)
    s.add_argument("--sir-runs", type=int, default=None)
    s.set_defaults(func=cmd_mmd)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"socnetbench: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BenchError, OSError, ValueError, KeyError) as exc:
        print(f"socnetbench: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
