import json
import logging

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from oracles import best_partition_bruteforce
from socnetbench.errors import (EmptyDatasetError, EmptyGraphError, IntegrityError,
                                MalformedInputError, ParseError)
from socnetbench.graph import build_graph, complete_graph, disjoint_union
from socnetbench.io import (Dataset, flat_edgelist, format_edgelist, ingest_directory,
                            read_dataset, read_edgelist, summarize_dataset, write_dataset)


def test_read_edgelist_examples(triangle):
    assert read_edgelist("0 1\n1 2\n2 0\n") == triangle
    assert read_edgelist("# comment\n0 1\n") == complete_graph(2)
    assert read_edgelist("\n0 1\n\n") == complete_graph(2)


def test_read_edgelist_parse_error_reports_line():
    with pytest.raises(ParseError) as exc:
        read_edgelist("0 x\n")
    assert exc.value.line == 1
    with pytest.raises(ParseError) as exc:
        read_edgelist("0 1\n# c\n2\n")
    assert exc.value.line == 3


def test_read_edgelist_empty():
    with pytest.raises(EmptyGraphError):
        read_edgelist("# nothing\n")


def test_write_two_triangles(tmp_path, triangle):
    ds = Dataset([triangle, triangle], ["a", "b"], ["sampled", "sampled"], master_seed=7)
    manifest = write_dataset(ds, tmp_path)
    assert sorted(p.name for p in tmp_path.iterdir()) == ["a.edges", "b.edges", "manifest.json"]
    assert [g["id"] for g in manifest["graphs"]] == ["a", "b"]
    on_disk = json.loads((tmp_path / "manifest.json").read_text())
    assert on_disk["master_seed"] == 7
    assert set(on_disk) >= {"name", "master_seed", "graphs", "failures"}
    assert on_disk["graphs"][0] == {"id": "a", "n_nodes": 3, "n_edges": 3, "provenance": "sampled"}
    assert (tmp_path / "a.edges").read_text() == "0 1\n0 2\n1 2\n"


def test_failure_record_has_no_file(tmp_path, triangle):
    ds = Dataset([triangle], ["ok"], ["rmat"], failures=[("bad", "EmptyQuadrantError")])
    manifest = write_dataset(ds, tmp_path)
    assert manifest["failures"] == [{"id": "bad", "reason": "EmptyQuadrantError"}]
    assert not (tmp_path / "bad.edges").exists()
    assert read_dataset(tmp_path).failures == [("bad", "EmptyQuadrantError")]


def test_empty_dataset(tmp_path):
    manifest = write_dataset(Dataset([], [], []), tmp_path)
    assert manifest["n_networks"] == 0
    assert len(read_dataset(tmp_path)) == 0


def test_missing_file_is_integrity_error(tmp_path, triangle):
    write_dataset(Dataset([triangle], ["a"], ["sampled"]), tmp_path)
    (tmp_path / "a.edges").unlink()
    with pytest.raises(IntegrityError):
        read_dataset(tmp_path)


def test_unlisted_file_ignored(tmp_path, triangle, caplog):
    write_dataset(Dataset([triangle], ["a"], ["sampled"]), tmp_path)
    (tmp_path / "stray.edges").write_text("0 1\n")
    with caplog.at_level(logging.WARNING):
        ds = read_dataset(tmp_path)
    assert ds.ids == ["a"]
    assert "stray.edges" in caplog.text


def test_isolated_nodes_survive_round_trip(tmp_path):
    g = build_graph([(0, 1)], 5)
    write_dataset(Dataset([g], ["g"], ["rmat"], meta=[{"rmat": {"a": 0.5}}]), tmp_path)
    back = read_dataset(tmp_path)
    assert back.graphs[0] == g
    assert back.meta == [{"rmat": {"a": 0.5}}]


def test_dataset_invariants(triangle):
    with pytest.raises(MalformedInputError):
        Dataset([triangle, triangle], ["a", "a"], ["sampled"] * 2)
    with pytest.raises(MalformedInputError):
        Dataset([triangle], ["a"], ["sampled"], failures=[("a", "x")])
    with pytest.raises(MalformedInputError):
        Dataset([triangle], ["a"], ["gran"])


graph_st = st.integers(1, 7).flatmap(lambda n: st.lists(
    st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=15).map(lambda e: build_graph(e, n)))


@settings(max_examples=40, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.lists(graph_st, max_size=5))
def test_round_trip_property(tmp_path_factory, graphs):
    d = tmp_path_factory.mktemp("ds")
    ds = Dataset.from_graphs(graphs, provenance="sampled", master_seed=3)
    write_dataset(ds, d)
    back = read_dataset(d)
    assert back.ids == ds.ids and back.provenance == ds.provenance
    assert back.graphs == ds.graphs
    for a, b in zip(ds.graphs, back.graphs):
        assert np.array_equal(a.degrees, b.degrees)


def test_ingest_directory(tmp_path, triangle):
    (tmp_path / "g1.edges").write_text(format_edgelist(triangle))
    (tmp_path / "g0.edges").write_text("5 6\n")
    ds = ingest_directory(tmp_path)
    assert ds.ids == ["g0", "g1"] and ds.provenance == ["ingested"] * 2


def test_summary_of_single_triangle(triangle):
    s = summarize_dataset(Dataset([triangle], ["k3"], ["sampled"]), community_runs=3, seed=1)
    assert (s.n_networks, s.min_nodes, s.max_nodes) == (1, 3, 3)
    assert s.min_density == s.max_density == 1.0
    assert s.min_communities == s.max_communities == 1


def test_summary_two_triangles_has_two_communities():
    g = disjoint_union(complete_graph(3), complete_graph(3))
    q, k = best_partition_bruteforce(6, g.edges.tolist())
    assert k == 2
    s = summarize_dataset(Dataset([g], ["g"], ["sampled"]), seed=0)
    assert s.min_communities == s.max_communities == 2


def test_summary_order_invariant(rng):
    from conftest import planted_partition
    graphs = [planted_partition(3, 6, 0.8, 0.05, rng) for _ in range(4)]
    a = summarize_dataset(Dataset.from_graphs(graphs), seed=4)
    b = summarize_dataset(Dataset.from_graphs(graphs[::-1]), seed=4)
    assert a == b


def test_summary_empty_dataset():
    with pytest.raises(EmptyDatasetError):
        summarize_dataset(Dataset([], [], []))


def test_flat_edgelist_offsets(triangle):
    ds = Dataset.from_graphs([triangle, complete_graph(2)])
    edges, offsets = flat_edgelist(ds)
    assert offsets.tolist() == [0, 3, 5]
    assert edges.tolist()[-1] == [3, 4]
