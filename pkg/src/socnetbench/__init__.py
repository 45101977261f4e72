"""Benchmarking toolkit for synthetic social networks.

Build sub-network datasets by exploration sampling with replacement, mirror
them with fitted R-MAT graphs, and score candidate sets against a reference
with MMD over structural and social-network statistics.
"""

from .dynamics import (Partition, SirConfig, SirResult, louvain, louvain_sample, modularity,
                       sir_run, sir_sample)
from .errors import BenchError
from .graph import (ComponentLabeling, Graph, build_graph, connected_components, density,
                    induced_subgraph, largest_component)
from .io import (Dataset, DatasetSummary, read_dataset, read_edgelist, summarize_dataset,
                 write_dataset)
from .metrics import (BinSpec, MetricSample, clustering_sample, degree_sample, paths_sample,
                      spectral_sample)
from .mmd import KernelConfig, MmdReport, SuiteConfig, evaluate_suite, kernel_value, mmd_squared
from .rmat import RmatParams, fit_rmat, generate_rmat, mirror_dataset
from .sampling import SamplerConfig, eswr, mhrw_sample, sample_size

__version__ = "0.1.0"
