"""
Fitting R-MAT to each graph of a dataset
========================================

The simplest "generator" baseline: read off the quadrant fractions of each
reference graph's adjacency matrix and draw a fresh R-MAT graph with the
same number of nodes and edges.
"""

import numpy as np

from socnetbench import Dataset, fit_rmat, generate_rmat, mirror_dataset
from socnetbench.rmat import RmatParams, quadrant_counts
from socnetbench.rng import derive_rng

# %% round trip on one graph
truth = RmatParams(0.45, 0.15, 0.15, 0.25, edge_factor=20, scale=10, target_nodes=1024)
g = generate_rmat(truth, derive_rng(5))
print(g)
print("quadrant edge counts:", quadrant_counts(g))
fit = fit_rmat(g)
print("true  ", truth.probabilities)
print("fitted", np.round(fit.probabilities, 3))

# %% degree tail: skewed parameters give hubs
skewed = RmatParams(0.55, 0.15, 0.15, 0.15, edge_factor=8, scale=12, target_nodes=4096)
d = generate_rmat(skewed, derive_rng(6)).degrees
print("max degree %d, median %.0f" % (d.max(), np.median(d)))

# %% mirroring a whole dataset
ref = Dataset.from_graphs([generate_rmat(truth, derive_rng(7, k)) for k in range(5)])
mirror = mirror_dataset(ref, seed=8)
for gid, h, meta in zip(mirror.ids, mirror.graphs, mirror.meta):
    print(gid, h.n_nodes, h.n_edges, meta["reference_id"])
print("failure rate", mirror.info["failure_rate"])
