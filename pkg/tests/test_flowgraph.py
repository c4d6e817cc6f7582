import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import ALL
from veerflow.flowgraph import (
    ORACLE_LIMIT,
    Digraph,
    Edge,
    build_flow_graph,
    edge_multiset,
    enumerate_cycles,
    in_degrees,
    is_infinitesimal_free,
    out_degree_one_cycles,
    reduce,
    strongly_connected_components,
    to_dot,
    to_json,
)
from veerflow.taut import veering_from_entry


# -- oracles ---------------------------------------------------------------------


def brute_force_cycles(G, max_len):
    """Every closed edge walk without repeated vertices, up to rotation."""
    idx = {e: i for i, e in enumerate(G.edges)}
    out = {v: [] for v in G.vertices}
    for e in G.edges:
        out[e.src].append(e)
    found = set()

    def walk(start, v, seen, path):
        for e in out[v]:
            if e.dst == start:
                cyc = [idx[x] for x in path + [e]]
                k = cyc.index(min(cyc))
                found.add(tuple(cyc[k:] + cyc[:k]))
            elif e.dst not in seen and len(path) + 1 < max_len:
                walk(start, e.dst, seen | {e.dst}, path + [e])

    for v in G.vertices:
        walk(v, v, {v}, [])
    return found


def canonical(G, cycles):
    idx = {e: i for i, e in enumerate(G.edges)}
    out = set()
    for c in cycles:
        ids = [idx[e] for e in c.edges]
        k = ids.index(min(ids))
        out.add(tuple(ids[k:] + ids[:k]))
    return out


def closed_subgraph_exists(G):
    """Reachability closures: a proper closed subgraph contains some vertex's closure."""
    succ = {v: set() for v in G.vertices}
    for e in G.edges:
        succ[e.src].add(e.dst)
    everything = set(G.vertices)
    for v in G.vertices:
        seen, stack = {v}, [v]
        while stack:
            for w in succ[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != everything:
            return True
    return False


def to_nx(G):
    H = nx.MultiDiGraph()
    H.add_nodes_from(G.vertices)
    H.add_edges_from((e.src, e.dst) for e in G.edges)
    return H


digraphs = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=14).map(
        lambda es: Digraph(tuple(range(n)), tuple(Edge(a, b, (i,)) for i, (a, b) in enumerate(es)))
    )
)


# -- flow graphs of the fixtures -----------------------------------------------------


@pytest.mark.parametrize("entry", ALL)
def test_flow_graph_counts(entry):
    vt = veering_from_entry(entry)
    G = build_flow_graph(vt)
    n = vt.tri.tet_count
    assert len(G.vertices) == n and len(G.edges) == 3 * n
    assert all(d >= 1 for d in G.out_degree().values())
    assert all(d == 3 for d in in_degrees(G).values())
    labels = {e.label for e in G.edges}
    assert len(labels) == 3 * n
    for t in range(n):
        assert {e.dst for e in G.edges if e.label[0] == t} == {vt.bottom_class(t)}


@pytest.mark.parametrize("entry", ALL)
def test_reduced_flow_graph_has_no_infinitesimal_part(entry):
    R = reduce(build_flow_graph(veering_from_entry(entry)))
    H = R.graph
    assert len(H.vertices) <= ORACLE_LIMIT
    assert H.vertices
    assert not closed_subgraph_exists(H)
    assert nx.is_strongly_connected(to_nx(H))
    assert is_infinitesimal_free(H)
    assert is_infinitesimal_free(H, mode="cycles")


@pytest.mark.parametrize("entry", ALL)
def test_flow_cycles_match_brute_force(entry):
    G = build_flow_graph(veering_from_entry(entry))
    got = enumerate_cycles(G, 6)
    assert len(got) == len(canonical(G, got))
    assert canonical(G, got) == brute_force_cycles(G, 6)


# -- general digraphs ------------------------------------------------------------


def test_complete_digraph_on_three_vertices():
    G = Digraph((0, 1, 2), tuple(Edge(a, b) for a in range(3) for b in range(3) if a != b))
    cycles = enumerate_cycles(G, 3)
    assert len(cycles) == 5
    assert sorted(c.length for c in cycles) == [2, 2, 2, 3, 3]
    assert len(list(nx.simple_cycles(nx.DiGraph([(e.src, e.dst) for e in G.edges])))) == 5


def test_parallel_edges_and_loops_are_distinct_cycles():
    G = Digraph((0, 1), (Edge(0, 1, ("a",)), Edge(0, 1, ("b",)), Edge(1, 0, ("c",)), Edge(1, 1, ("d",))))
    cycles = enumerate_cycles(G, 2)
    assert sorted(c.length for c in cycles) == [1, 2, 2]


@settings(max_examples=300, deadline=None)
@given(digraphs, st.integers(1, 6))
def test_cycles_property(G, L):
    got = enumerate_cycles(G, L)
    assert len(got) == len(canonical(G, got))
    assert canonical(G, got) == brute_force_cycles(G, L)
    for c in got:
        assert c.length <= L
        assert [e.src for e in c.edges] == list(c.vertices)


def test_cycle_bound_must_be_positive():
    with pytest.raises(ValueError):
        enumerate_cycles(Digraph((0,), ()), 0)


@settings(max_examples=300, deadline=None)
@given(digraphs)
def test_scc_against_networkx(G):
    ours = sorted(sorted(c) for c in strongly_connected_components(G))
    theirs = sorted(sorted(c) for c in nx.strongly_connected_components(to_nx(G)))
    assert ours == theirs
    assert is_infinitesimal_free(G) == (not closed_subgraph_exists(G)) == nx.is_strongly_connected(to_nx(G))


@settings(max_examples=300, deadline=None)
@given(digraphs)
def test_reduce_properties(G):
    R = reduce(G)
    gone = {v for c in R.removed_cycles for v in c}
    assert set(R.graph.vertices) == set(G.vertices) - gone
    assert all(e.dst in gone for e in R.removed_edges)
    # every edge is either kept or removed, never both
    assert sorted(map(repr, R.graph.edges + R.removed_edges)) == sorted(map(repr, G.edges))
    assert out_degree_one_cycles(R.graph) == []
    assert len(gone) == sum(len(c) for c in R.removed_cycles)
    again = reduce(R.graph)
    assert again.graph == R.graph and again.removed_cycles == ()


def test_reduce_removes_cycle_and_entering_edges():
    cycle = [Edge(0, 1), Edge(1, 2), Edge(2, 0)]
    entering = [Edge(3, 0), Edge(4, 1), Edge(4, 2)]
    # 3 and 4 keep two outgoing edges each, so they survive
    rest = [Edge(3, 4, ("x",)), Edge(3, 4, ("y",)), Edge(4, 3, ("x",)), Edge(4, 3, ("y",))]
    R = reduce(Digraph(tuple(range(5)), tuple(cycle + entering + rest)))
    assert R.removed_cycles == ((0, 1, 2),)
    assert set(R.removed_edges) == set(cycle + entering)
    assert set(R.graph.edges) == set(rest)


def test_reduce_repeats_until_nothing_is_left_to_remove():
    # removing 2 <-> 3 leaves 0 <-> 1 with one way out each
    es = [Edge(0, 1), Edge(1, 0), Edge(1, 2), Edge(2, 3), Edge(3, 2)]
    R = reduce(Digraph((0, 1, 2, 3), tuple(es)))
    assert R.removed_cycles == ((2, 3), (0, 1))
    assert R.graph.vertices == ()


def test_identity_when_every_out_degree_is_two():
    es = [Edge(a, (a + k) % 4) for a in range(4) for k in (1, 2)]
    G = Digraph(tuple(range(4)), tuple(es))
    assert reduce(G).graph == G


def test_properness_of_infinitesimal_components():
    two = [Edge(0, 1), Edge(1, 0)]
    assert is_infinitesimal_free(Digraph((0, 1), tuple(two)))
    assert not is_infinitesimal_free(Digraph((0, 1, 2), tuple(two)))
    assert not is_infinitesimal_free(Digraph((0, 1, 2), tuple(two)), mode="cycles")


def test_oracle_mode_is_bounded():
    G = Digraph(tuple(range(ORACLE_LIMIT + 1)), ())
    with pytest.raises(ValueError):
        is_infinitesimal_free(G)
    with pytest.raises(ValueError):
        is_infinitesimal_free(G, mode="nope")


def test_serialisation_is_stable():
    G = build_flow_graph(veering_from_entry(ALL[0]))
    data = to_json(G)
    assert len(data["edges"]) == 18 and data["orderings"] == "absent"
    dot = to_dot(G)
    assert dot.startswith("digraph G {") and dot.count("->") == 18
    assert sum(edge_multiset(G).values()) == 18
