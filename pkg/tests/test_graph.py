import random

import networkx as nx
import pytest

from multiseq.core import Edge, MultiTransducer, Transducer, is_sequential, relation_upto, trim
from multiseq.corpus import random_transducer
from multiseq.graph import (BoundExceeded, condensation_paths, is_separable, multi_to_union,
                            multi_to_union_parts, scc, split, split_components, tarjan,
                            transient_edges)
from multiseq.weakdet import weak_determinize


def _nx_sccs(t):
    g = nx.DiGraph()
    g.add_nodes_from(t.states)
    g.add_edges_from((e.src, e.dst) for e in t.edges)
    return {frozenset(c) for c in nx.strongly_connected_components(g)}


def test_scc_matches_networkx(fx):
    rng = random.Random(7)
    ts = list(fx.values()) + [random_transducer(rng) for _ in range(100)]
    for t in ts:
        assert set(scc(t).components) == _nx_sccs(t)


def test_scc_order_is_reverse_topological(fx):
    t = fx["t_fig2"]
    index = scc(t)
    for e in t.edges:
        # sinks come first, so an edge never goes to a component listed later
        assert index.scc_of[e.dst] <= index.scc_of[e.src]


def test_tarjan_deep_chain_no_recursion_error():
    n = 5000
    comps = tarjan(range(n), lambda v: [v + 1] if v + 1 < n else [])
    assert len(comps) == n


def test_fig2_components(fx):
    index = scc(fx["t_fig2"])
    assert set(index.components) == {frozenset({0, 1, 2}), frozenset({3}), frozenset({4})}


def test_transient_edges(fx):
    got = {(e.src, e.dst) for e in transient_edges(fx["t_fig2"])}
    assert got == {(2, 3), (3, 4)}
    assert transient_edges(fx["t_blank"]) == frozenset()


def test_condensation_paths_fig2(fx):
    paths = condensation_paths(fx["t_fig2"])
    assert [tuple((e.src, e.dst) for e in p) for p in paths] == [(), ((2, 3),), ((2, 3), (3, 4))]


def test_split_preserves_relation(fx):
    for t in fx.values():
        assert relation_upto(split(t), 6) == relation_upto(t, 6), t.name


def test_split_of_weak_determinisation_fig2(fx):
    parts = split_components(weak_determinize(fx["t_fig2"]).machine)
    assert len(parts) == 2
    assert all(is_sequential(p) for _, p in parts)


def test_separable_examples(fx):
    assert is_separable(fx["t_blank"])
    assert not is_separable(fx["t_swap"])
    assert is_separable(weak_determinize(fx["t_swap"]).machine)


def test_separable_machines_split_into_sequential_parts():
    rng = random.Random(11)
    seen = 0
    for _ in range(300):
        t = random_transducer(rng)
        if not is_separable(t):
            continue
        seen += 1
        for _, part in split_components(multi_to_union(t)):
            assert is_sequential(trim(part))
    assert seen > 10


def test_multi_to_union():
    m = MultiTransducer("a", "ab", [0, 1], [(0, "a", "a", 1)], [0], {0: {"", "b"}, 1: {"a", "b", "bb"}})
    parts = multi_to_union_parts(m)
    assert len(parts) == 3
    assert all(isinstance(p, Transducer) for p in parts)
    assert relation_upto(multi_to_union(m), 3) == relation_upto(m, 3)
    with pytest.raises(BoundExceeded):
        multi_to_union_parts(m, max_copies=2)


def test_split_restricts_initials_to_starting_scc():
    # two initial states in different SCCs of a chain
    t = Transducer("a", "a", [0, 1], [(0, "a", "a", 1), (1, "a", "", 1)], [0, 1], {1: ""})
    parts = split_components(t)
    inits = sorted(tuple(sorted(p.initials)) for _, p in parts)
    assert inits == [(0,), (1,)]
    assert relation_upto(split(t), 5) == relation_upto(t, 5)


def test_edge_is_named_tuple():
    assert Edge(0, "a", "", 1).dst == 1
