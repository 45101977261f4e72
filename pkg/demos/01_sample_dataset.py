"""
Building a dataset of sub-networks from one large graph
=======================================================

We take a single source network, walk over it with a Metropolis-Hastings
random walk and keep the induced sub-network of every walk. Sizes come from
a normal distribution, so the result looks like a collection of small
social networks of similar (but not identical) size.
"""

import numpy as np

from socnetbench import RmatParams, SamplerConfig, eswr, generate_rmat, summarize_dataset
from socnetbench.rng import derive_rng

# A synthetic stand-in for a social network: 2000 nodes of skewed R-MAT.
source = generate_rmat(RmatParams(0.57, 0.19, 0.19, 0.05, 6, 11, 2000), derive_rng(0))
print(source)

# 30 sub-networks of roughly 120 nodes
cfg = SamplerConfig(n_networks=30, size_mean=120, size_stddev=15, seed=1)
ds = eswr(source, cfg)
print(len(ds), "graphs,", len(ds.failures), "failures")

sizes = np.array([g.n_nodes for g in ds.graphs])
print("sizes: mean %.1f, std %.1f" % (sizes.mean(), sizes.std()))

# the walk is degree-corrected, so the sampled degree distribution should
# not be pulled towards hubs the way a plain random walk would be
print("source mean degree %.2f" % source.degrees.mean())
print("sample mean degree %.2f" % np.mean([g.degrees.mean() for g in ds.graphs]))

# summary table: size, density and community ranges
for k, v in summarize_dataset(ds, community_runs=3).as_dict().items():
    print(f"  {k:16s} {v}")

# ds can be written with socnetbench.write_dataset(ds, "some/dir")
