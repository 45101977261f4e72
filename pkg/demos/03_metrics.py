"""
Per-graph statistics
====================

Each graph is reduced to a handful of distributions: degrees, local
clustering, the normalized-Laplacian spectrum, shortest-path lengths, SIR
outbreak duration and reach, and Louvain community counts.
"""

import numpy as np

from socnetbench.graph import complete_graph, disjoint_union, path_graph
from socnetbench.dynamics import SirConfig, louvain, modularity, sir_run
from socnetbench.metrics import (clustering_values, path_length_values, spectral_sample,
                                 spectrum_values)

g = disjoint_union(complete_graph(5), path_graph(4))
print(g)

print("clustering", np.round(clustering_values(g), 3))
lam = spectrum_values(g)
print("spectrum", np.round(lam, 3))
# eigenvalues sit in [0, 2], sum to the number of non-isolated nodes,
# and 0 appears once per connected component
print("sum %.3f, zeros %d" % (lam.sum(), np.sum(np.abs(lam) < 1e-9)))

print("path lengths", np.bincount(path_length_values(g)))
print("spectral histogram mass", spectral_sample(g).bins.sum())

# SIR: on a single edge both nodes are seeds, nothing else can happen,
# so every run lasts exactly the infectious period
r = sir_run(complete_graph(2), SirConfig(), np.random.default_rng(0))
print(r)

# a long path with certain transmission: the front moves one node per step
big = path_graph(30)
r = sir_run(big, SirConfig(n_seeds=1, infect_prob=1.0), np.random.default_rng(1), seeds=[0])
print(r)

# Louvain
p = louvain(g, rng=np.random.default_rng(2))
print("communities", p.n_communities, "Q = %.4f" % modularity(g, p))
