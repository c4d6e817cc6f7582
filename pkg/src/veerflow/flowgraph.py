"""Directed multigraphs, the flow graph of a veering triangulation, its reduction, and cycles."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .taut import VeeringTriangulation


@dataclass(frozen=True)
class Edge:
    src: Hashable
    dst: Hashable
    label: tuple = ()


@dataclass(frozen=True)
class Digraph:
    vertices: tuple
    edges: tuple[Edge, ...]
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def out_edges(self) -> dict:
        out: dict = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
        return out

    def in_edges(self) -> dict:
        inn: dict = {v: [] for v in self.vertices}
        for e in self.edges:
            inn[e.dst].append(e)
        return inn

    def out_degree(self) -> dict:
        deg = {v: 0 for v in self.vertices}
        for e in self.edges:
            deg[e.src] += 1
        return deg

    def successors(self) -> dict:
        succ: dict = {v: set() for v in self.vertices}
        for e in self.edges:
            succ[e.src].add(e.dst)
        return succ

    def subgraph(self, keep: Iterable) -> "Digraph":
        keep = set(keep)
        verts = tuple(v for v in self.vertices if v in keep)
        edges = tuple(e for e in self.edges if e.src in keep and e.dst in keep)
        return Digraph(verts, edges, dict(self.meta))


@dataclass(frozen=True)
class ReducedGraph:
    graph: Digraph
    removed_cycles: tuple[tuple, ...]
    removed_edges: tuple[Edge, ...]


# ---------------------------------------------------------------------------
# Flow graph


def build_flow_graph(vt: VeeringTriangulation) -> Digraph:
    """One vertex per edge class; three edges per tetrahedron into its bottom edge."""
    edges = []
    for t in range(vt.tri.tet_count):
        r = vt.roles[t]
        bottom = vt.bottom_class(t)
        top_color = vt.colors[vt.top_class(t)]
        edges.append(Edge(vt.top_class(t), bottom, (t, "top")))
        sides = [e for e in r.equator if vt.edge_color(t, e) != top_color]
        for name, e in zip(("side-a", "side-b"), sides):
            edges.append(Edge(vt.edge_map[t, e], bottom, (t, name)))
    verts = tuple(range(len(vt.colors)))
    return Digraph(verts, tuple(edges), {"orderings": "absent"})


# ---------------------------------------------------------------------------
# Reduction


def out_degree_one_cycles(G: Digraph) -> list[tuple]:
    """Cycles on which every vertex has exactly one outgoing edge (in ``G``)."""
    deg = G.out_degree()
    nxt = {}
    for e in G.edges:
        if deg[e.src] == 1:
            nxt[e.src] = e.dst
    cycles = []
    state: dict = {}
    for v in G.vertices:
        if v not in nxt or v in state:
            continue
        path = []
        w = v
        while w in nxt and w not in state:
            state[w] = "active"
            path.append(w)
            w = nxt[w]
        if w in state and state[w] == "active":
            cyc = path[path.index(w):]
            k = cyc.index(min(cyc, key=_sort_key))
            cycles.append(tuple(cyc[k:] + cyc[:k]))
        for x in path:
            state[x] = "done"
    return sorted(cycles, key=lambda c: [_sort_key(x) for x in c])


def reduce(G: Digraph) -> ReducedGraph:
    """Delete the out-degree-one cycles together with every edge entering them.

    Repeated until no such cycle is left; for flow graphs of veering
    triangulations a single round suffices.
    """
    removed_cycles: list[tuple] = []
    removed_edges: list[Edge] = []
    H = G
    while True:
        cycles = out_degree_one_cycles(H)
        if not cycles:
            break
        gone = {v for c in cycles for v in c}
        removed_cycles.extend(cycles)
        removed_edges.extend(e for e in H.edges if e.dst in gone)
        H = H.subgraph(v for v in H.vertices if v not in gone)
    return ReducedGraph(H, tuple(removed_cycles), tuple(removed_edges))


# ---------------------------------------------------------------------------
# Strong components and infinitesimal components


def strongly_connected_components(G: Digraph) -> list[list]:
    """Tarjan's algorithm, iterative."""
    succ = {v: sorted(s, key=_sort_key) for v, s in G.successors().items()}
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    comps: list[list] = []
    counter = 0
    for root in G.vertices:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(comp)
    return comps


ORACLE_LIMIT = 20


def is_infinitesimal_free(G: Digraph, mode: str = "oracle") -> bool:
    """True when no proper subgraph is closed under outgoing edges.

    ``oracle`` mode (at most 20 vertices) looks for a sink among the strong
    components other than the whole graph; ``cycles`` mode works at any size
    and only looks for out-degree-one cycles and sinks.
    """
    if mode == "oracle":
        if len(G.vertices) > ORACLE_LIMIT:
            raise ValueError(f"oracle mode is limited to {ORACLE_LIMIT} vertices")
        comps = strongly_connected_components(G)
        return len(comps) <= 1
    if mode == "cycles":
        deg = G.out_degree()
        if len(G.vertices) > 1 and any(d == 0 for d in deg.values()):
            return False
        cycles = out_degree_one_cycles(G)
        return not any(len(c) < len(G.vertices) for c in cycles)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Cycles


@dataclass(frozen=True)
class Cycle:
    vertices: tuple
    edges: tuple[Edge, ...]

    @property
    def length(self) -> int:
        return len(self.edges)


def _sort_key(v) -> tuple:
    return (type(v).__name__, repr(v)) if not isinstance(v, int) else ("", v)


def enumerate_cycles(G: Digraph, max_len: int) -> list[Cycle]:
    """All elementary directed cycles with at most ``max_len`` edges.

    Cycles are rooted at their smallest vertex; for each root the search only
    visits larger vertices and prunes with distances back to the root.
    Parallel edges give distinct cycles.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    order = sorted(G.vertices, key=_sort_key)
    rank = {v: i for i, v in enumerate(order)}
    out = G.out_edges()
    for v in out:
        out[v].sort(key=lambda e: (rank[e.dst], repr(e.label)))
    pred: dict = {v: set() for v in G.vertices}
    for e in G.edges:
        pred[e.dst].add(e.src)
    result: list[Cycle] = []
    for s in order:
        rs = rank[s]
        # distance from each allowed vertex back to s
        dist = {s: 0}
        dq = deque([s])
        while dq:
            w = dq.popleft()
            if dist[w] >= max_len:
                continue
            for u in pred[w]:
                if rank[u] > rs and u not in dist:
                    dist[u] = dist[w] + 1
                    dq.append(u)
        path_v = [s]
        path_e: list[Edge] = []
        on_path = {s}

        def extend(v) -> None:
            for e in out[v]:
                w = e.dst
                if w == s:
                    result.append(Cycle(tuple(path_v), tuple(path_e + [e])))
                    continue
                if rank[w] <= rs or w in on_path or w not in dist:
                    continue
                if len(path_e) + 1 + dist[w] > max_len:
                    continue
                path_v.append(w)
                path_e.append(e)
                on_path.add(w)
                extend(w)
                on_path.discard(w)
                path_e.pop()
                path_v.pop()

        extend(s)
    return result


def to_json(G: Digraph) -> dict:
    return {
        "vertices": [_jsonable(v) for v in G.vertices],
        "edges": [
            {"src": _jsonable(e.src), "dst": _jsonable(e.dst), "label": _jsonable(e.label)}
            for e in G.edges
        ],
        **{k: _jsonable(v) for k, v in sorted(G.meta.items())},
    }


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def to_dot(G: Digraph, name: str = "G") -> str:
    ids = {v: i for i, v in enumerate(G.vertices)}
    lines = [f"digraph {name} {{"]
    for v, i in ids.items():
        label = str(v).replace('"', "'")
        lines.append(f'  n{i} [label="{label}"];')
    for e in G.edges:
        label = ",".join(str(x) for x in e.label).replace('"', "'")
        lines.append(f'  n{ids[e.src]} -> n{ids[e.dst]} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def edge_multiset(G: Digraph) -> dict:
    counts: dict = {}
    for e in G.edges:
        counts[e.src, e.dst] = counts.get((e.src, e.dst), 0) + 1
    return counts


def in_degrees(G: Digraph) -> dict:
    deg = {v: 0 for v in G.vertices}
    for e in G.edges:
        deg[e.dst] += 1
    return deg


def induced_on(G: Digraph, keep: Sequence) -> Digraph:
    return G.subgraph(keep)
