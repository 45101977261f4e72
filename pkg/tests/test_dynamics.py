import numpy as np
import pytest
from scipy.sparse import csgraph

from conftest import planted_partition, random_graph
from oracles import best_partition_bruteforce, modularity_bruteforce
from socnetbench.dynamics import (INFECTED, RECOVERED, SUSCEPTIBLE, Partition, SirConfig,
                                  louvain, louvain_levels, louvain_sample, modularity, sir_run,
                                  sir_sample, sir_states)
from socnetbench.errors import MalformedInputError, TooSmallGraphError, UndefinedModularityError
from socnetbench.graph import (build_graph, complete_graph, connected_components, cycle_graph,
                               disjoint_union, path_graph)
from socnetbench.rng import derive_rng


def two_k5_bridge():
    return build_graph(complete_graph(5).edges.tolist()
                       + (complete_graph(5).edges + 5).tolist() + [(4, 5)])


# --- SIR -------------------------------------------------------------------

def test_k2_hand_trace(rng):
    for _ in range(10):
        r = sir_run(complete_graph(2), SirConfig(), rng)
        assert (r.steps, r.saturation) == (5, 1.0)


def test_no_transmission_on_p4(rng):
    r = sir_run(path_graph(4), SirConfig(infect_prob=0.0), rng)
    assert r.saturation == 0.5
    assert r.steps == 5


def test_certain_transmission_saturates(rng):
    g = path_graph(12)
    for _ in range(10):
        r = sir_run(g, SirConfig(n_seeds=1, infect_prob=1.0, infectious_period=11), rng)
        assert r.saturation == 1.0


def test_too_small_graph(rng):
    with pytest.raises(TooSmallGraphError):
        sir_run(build_graph([], 1), SirConfig(n_seeds=2), rng)


def test_sir_config_invariants():
    with pytest.raises(MalformedInputError):
        SirConfig(infect_prob=1.5)
    with pytest.raises(MalformedInputError):
        SirConfig(infectious_period=0)


def test_sir_sample_k2(rng):
    steps, sat = sir_sample(complete_graph(2), SirConfig(), rng)
    assert steps.bins[5] == 1.0 and steps.bin_domain.count == 101
    assert sat.bins[-1] == 1.0 and sat.bin_domain.count == 20


def test_sir_sample_no_transmission_k10(rng):
    _, sat = sir_sample(complete_graph(10), SirConfig(infect_prob=0.0), rng)
    # 0.2 sits in bin [0.20, 0.25)
    assert sat.bins[4] == 1.0


def test_sir_sample_counts_runs(rng):
    from socnetbench.dynamics import sir_values
    steps, sat = sir_values(cycle_graph(30), SirConfig(n_runs=20), rng)
    assert len(steps) == len(sat) == 20


def test_state_machine_and_monotone_recovery():
    rng = np.random.default_rng(3)
    for trial in range(20):
        g = random_graph(30, 0.15, rng)
        cfg = SirConfig(infect_prob=0.3, infectious_period=3)
        history = np.array(list(sir_states(g, cfg, rng)))
        assert set(np.unique(history)) <= {SUSCEPTIBLE, INFECTED, RECOVERED}
        # per node the state sequence never goes backwards
        assert np.all(np.diff(history.astype(int), axis=0) >= 0)
        recovered = (history == RECOVERED).sum(axis=1)
        assert np.all(np.diff(recovered) >= 0)
        assert len(history) - 1 <= cfg.max_iterations


def test_front_advances_one_hop_per_iteration():
    rng = np.random.default_rng(5)
    for g in (path_graph(25), cycle_graph(31)):
        for _ in range(5):
            seeds = rng.choice(g.n_nodes, size=2, replace=False)
            dist = csgraph.shortest_path(g.adjacency(), unweighted=True, indices=seeds).min(axis=0)
            cfg = SirConfig(infect_prob=1.0, infectious_period=100, max_iterations=200)
            for t, state in enumerate(sir_states(g, cfg, rng, seeds=seeds)):
                reached = state != SUSCEPTIBLE
                assert np.array_equal(reached, dist <= t)
                if reached.all():
                    break


def test_path20_single_front():
    g = path_graph(20)
    cfg = SirConfig(n_seeds=1, infect_prob=1.0, infectious_period=50, max_iterations=100)
    reached = [int((s != SUSCEPTIBLE).sum()) for s in sir_states(g, cfg, np.random.default_rng(0), seeds=[0])]
    assert np.all(np.diff(reached[:20]) == 1)


def test_sir_deterministic():
    g = random_graph(40, 0.1, np.random.default_rng(1))
    a = [sir_run(g, SirConfig(), derive_rng(4, k)) for k in range(5)]
    b = [sir_run(g, SirConfig(), derive_rng(4, k)) for k in range(5)]
    assert a == b


# --- modularity -------------------------------------------------------------

def test_modularity_examples():
    g = disjoint_union(complete_graph(3), complete_graph(3))
    assert modularity(g, Partition(np.zeros(6, int))) == pytest.approx(0.0)
    assert modularity(g, Partition(np.array([0, 0, 0, 1, 1, 1]))) == pytest.approx(0.5)
    assert modularity(complete_graph(2), Partition(np.array([0, 1]))) == pytest.approx(-0.5)


def test_modularity_undefined_without_edges():
    with pytest.raises(UndefinedModularityError):
        modularity(build_graph([], 3), Partition(np.zeros(3, int)))


def test_modularity_matches_bruteforce():
    rng = np.random.default_rng(8)
    for _ in range(60):
        n = int(rng.integers(2, 20))
        g = random_graph(n, 0.3, rng)
        if g.n_edges == 0:
            continue
        labels = rng.integers(0, 4, size=n)
        res = float(rng.uniform(0.5, 2.0))
        assert modularity(g, Partition.from_labels(labels), res) == pytest.approx(
            modularity_bruteforce(n, g.edges.tolist(), labels, res), abs=1e-12)


# --- Louvain ------------------------------------------------------------------

@pytest.mark.parametrize("g, n", [
    (disjoint_union(complete_graph(3), complete_graph(3)), 6),
    (complete_graph(5), 5),
    (complete_graph(3), 3),
])
def test_louvain_finds_exhaustive_optimum(g, n):
    q_best, k_best = best_partition_bruteforce(n, g.edges.tolist())
    for r in range(5):
        p = louvain(g, 1.0, derive_rng(0, r))
        assert p.n_communities == k_best
        assert modularity(g, p) == pytest.approx(q_best, abs=1e-12)


def test_louvain_two_cliques_with_bridge():
    g = two_k5_bridge()
    halves = np.array([0] * 5 + [1] * 5)
    # exhaustive over the partitions generated by the two cliques' node sets
    candidates = {
        "one": np.zeros(10, int), "halves": halves, "singletons": np.arange(10),
    }
    qs = {k: modularity(g, Partition.from_labels(v)) for k, v in candidates.items()}
    assert max(qs, key=qs.get) == "halves"
    for r in range(5):
        p = louvain(g, 1.0, derive_rng(1, r))
        assert p == Partition.from_labels(halves)


def test_louvain_needs_edges():
    with pytest.raises(UndefinedModularityError):
        louvain(build_graph([], 4))


def test_louvain_properties():
    rng = np.random.default_rng(11)
    for _ in range(30):
        g = planted_partition(int(rng.integers(2, 5)), int(rng.integers(3, 8)), 0.7, 0.05, rng)
        if g.n_edges == 0:
            continue
        r = derive_rng(2, int(rng.integers(1 << 30)))
        levels = list(louvain_levels(g, 1.0, r))
        qs = [modularity(g, p) for p in levels]
        assert all(b >= a - 1e-12 for a, b in zip(qs, qs[1:]))
        p = louvain(g, 1.0, derive_rng(2, 0))
        q = modularity(g, p)
        assert q >= modularity(g, Partition(np.arange(g.n_nodes))) - 1e-12
        assert q >= -1e-12
        assert sorted(set(p.labels.tolist())) == list(range(p.n_communities))
        comp = connected_components(g).labels
        for c in range(p.n_communities):
            assert len(set(comp[p.labels == c].tolist())) == 1


def test_louvain_deterministic():
    g = planted_partition(4, 8, 0.6, 0.05, np.random.default_rng(2))
    assert louvain(g, 1.0, derive_rng(5)) == louvain(g, 1.0, derive_rng(5))


def test_louvain_sample_examples():
    g = disjoint_union(complete_graph(3), complete_graph(3))
    s = louvain_sample(g, 1.0, 5, derive_rng(0))
    assert s.bins[1] == 1.0  # integer bins start at 1
    s = louvain_sample(complete_graph(3), 1.0, 5, derive_rng(0))
    assert s.bins.tolist() == [1.0]
    from socnetbench.dynamics import louvain_counts
    assert len(louvain_counts(g, 1.0, 5, derive_rng(0))) == 5
