"""Markov graphs for the geodesic flow on the unit tangent bundle of a surface.

Input is a filling curve system given as a fatgraph. Vertices of the graph
are sectors ("arrows"):

* ``("side", h)``: at the midpoint of the edge of half-edge ``h``, pointing
  into the region on the left of ``h``;
* ``("quad", v, q)``: at vertex ``v``, pointing into quadrant ``q``;
* ``("int", region, kind, s, i)``: created inside a region by a splitting move.

For a region with corners d_1..d_n (anticlockwise) and sides c_i from d_i
to d_{i+1}, the arrows at d_i are named by where they point: S into the
region, N away from it, W across c_i and E across c_{i-1}. Side arrows are
S (into the region) or N (out of it).

Each region of size n is split in n - 3 stages of n moves. A move has three
sources feeding one target, listed top to bottom (bottom to top for the last
stage); the first source leaves on its left and the last on its right.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .fatgraph import Fatgraph, FatgraphError, curve_components
from .flowgraph import Digraph, Edge, ReducedGraph, reduce

SIDES = ("left", "through", "right")


class _Arrows:
    """Union-find over arrow keys; global arrows win as representatives."""

    def __init__(self) -> None:
        self.parent: dict = {}

    def add(self, key) -> None:
        self.parent.setdefault(key, key)

    def find(self, key):
        self.add(key)
        root = key
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[key] != root:
            self.parent[key], key = root, self.parent[key]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if _rank(rb) < _rank(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra


def _rank(key) -> tuple:
    order = {"side": 0, "quad": 1, "int": 2}
    return (order[key[0]],) + tuple(key[1:])


@dataclass(frozen=True)
class MarkovGraph:
    fatgraph: Fatgraph
    graph: Digraph
    aliases: dict = field(compare=False)
    in_order: dict = field(compare=False)    # vertex -> incoming edges, top to bottom
    out_order: dict = field(compare=False)   # vertex -> outgoing edges, left to right
    framing: str = "fiber"

    @property
    def vertices(self) -> tuple:
        return self.graph.vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.graph.edges


class _Region:
    """Index bookkeeping for one region."""

    def __init__(self, F: Fatgraph, rid: int):
        self.F = F
        self.rid = rid
        self.sides = F.regions[rid]
        self.n = len(self.sides)

    def corner(self, i: int) -> tuple[int, int]:
        v, s = self.F.where[self.sides[i % self.n]]
        return v, s

    def d(self, i: int, role: str):
        v, q0 = self.corner(i)
        shift = {"S": 0, "E": 1, "N": 2, "W": 3}[role]
        return ("quad", v, (q0 + shift) % 4)

    def c(self, i: int, role: str):
        h = self.sides[i % self.n]
        return ("side", h) if role == "S" else ("side", self.F.mate[h])

    def dN(self, s: int, i: int):
        return self.d(i, "N") if s == 0 else ("int", self.rid, "d", s, i % self.n)

    def cN(self, s: int, i: int):
        return self.c(i, "N") if s == 0 else ("int", self.rid, "c", s, i % self.n)


def _region_moves(R: _Region) -> tuple[list, list]:
    """Splitting moves of one region as (stage, index, [sources], target, order),
    plus the identifications made after the last stage."""
    n = R.n
    moves = []
    for t in range(n - 4):
        s = t // 2
        for j in range(n):
            if t % 2 == 0:
                srcs = [R.d(j - s - 1, "W"), R.dN(s + 1, j), R.d(j + s + 1, "E")]
                tgt = R.dN(s, j)
            else:
                srcs = [R.d(j - s - 1, "W"), R.cN(s + 1, j), R.d(j + s + 2, "E")]
                tgt = R.cN(s, j)
            moves.append((t, j, srcs, tgt, "top-to-bottom"))
    ident = []
    t = n - 4
    if n % 2 == 0:
        h = (n - 4) // 2
        for i in range(n):
            moves.append((t, i, [R.cN(h, i - 1), R.dN(h + 1, i), R.cN(h, i)], R.dN(h, i), "bottom-to-top"))
        for i in range(n):
            ident.append((R.cN(h, i - n // 2), R.c(i, "S")))
            ident.append((R.dN(h + 1, i - n // 2), R.d(i, "S")))
    else:
        h = (n - 3) // 2
        for i in range(n):
            moves.append((t, i, [R.dN(h, i), R.cN(h, i), R.dN(h, i + 1)], R.cN(h - 1, i), "bottom-to-top"))
        for i in range(n):
            ident.append((R.dN(h, i - (n - 1) // 2), R.c(i, "S")))
            ident.append((R.cN(h, i - (n + 1) // 2), R.d(i, "S")))
    return moves, ident


def build_markov_graph(F: Fatgraph) -> MarkovGraph:
    arrows = _Arrows()
    for h in F.where:
        arrows.add(("side", h))
    for v in range(F.V):
        for q in range(4):
            arrows.add(("quad", v, q))
    per_region = []
    for rid in range(F.F):
        R = _Region(F, rid)
        moves, ident = _region_moves(R)
        for _, _, srcs, tgt, _ in moves:
            for x in srcs + [tgt]:
                arrows.add(x)
        for a, b in ident:
            arrows.union(a, b)
        per_region.append((rid, moves))

    edges = []
    in_order: dict = {}
    out_tags: dict = {}
    for rid, moves in per_region:
        for t, j, srcs, tgt, order in moves:
            T = arrows.find(tgt)
            incoming = []
            for pos, src in enumerate(srcs):
                S = arrows.find(src)
                e = Edge(S, T, (rid, t, j, pos, SIDES[pos], "fiber"))
                edges.append(e)
                incoming.append(e)
                out_tags.setdefault(S, []).append(e)
            if order == "bottom-to-top":
                incoming.reverse()
            in_order.setdefault(T, []).extend(incoming)

    aliases: dict = {}
    for key in arrows.parent:
        aliases.setdefault(arrows.find(key), []).append(key)
    verts = tuple(sorted(aliases, key=_rank))
    for v in verts:
        aliases[v] = sorted(aliases[v], key=_rank)
    side_rank = {s: i for i, s in enumerate(SIDES)}
    out_order = {
        v: sorted(es, key=lambda e: (side_rank[e.label[4]], e.label[1] if e.label[4] != "left" else -e.label[1], e.label[0], e.label[2]))
        for v, es in out_tags.items()
    }
    G = Digraph(verts, tuple(edges), {"framing": "fiber"})
    return MarkovGraph(F, G, aliases, in_order, out_order)


def same_planar_order(a: list, b: list) -> bool:
    """Planar orders are linear orders up to reversal."""
    a, b = list(a), list(b)
    return a == b or a == b[::-1]


def flow_box_count(F: Fatgraph) -> int:
    return sum(3 * n * (n - 3) for n in F.region_sizes())


def reduce_markov(MG: MarkovGraph) -> ReducedGraph:
    return reduce(MG.graph)


def square_flanked(F: Fatgraph, v: int, q: int) -> bool:
    """Whether both quadrants beside quadrant q at v are squares."""
    sizes = F.region_sizes()
    return sizes[F.quadrant_region(v, q - 1)] == 4 and sizes[F.quadrant_region(v, q + 1)] == 4


# ---------------------------------------------------------------------------
# Restriction to one half of a doubled surface


def split_regions(F: Fatgraph, curve_edges: set[int]) -> list[set[int]]:
    """Classes of regions connected through edges not on the given curves."""
    parent = list(range(F.F))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in F.pairing:
        if F.edge_id[a] in curve_edges:
            continue
        ra, rb = find(F.region_of[a]), find(F.region_of[b])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    classes: dict[int, set[int]] = {}
    for r in range(F.F):
        classes.setdefault(find(r), set()).add(r)
    return sorted(classes.values(), key=min)


def restrict_to_half(MG: MarkovGraph, doubling_curve: set[int], keep_region: int = 0) -> MarkovGraph:
    """Keep the arrows lying strictly inside the half containing ``keep_region``.

    ``doubling_curve`` is a set of fatgraph edge ids forming whole curves.
    Arrows on the curve (at its edges and vertices) are dropped too.
    """
    F = MG.fatgraph
    curve_edges = set(doubling_curve)
    for comp in curve_components(F):
        ids = {F.edge_id[h] for h in comp}
        if ids & curve_edges and not ids <= curve_edges:
            raise FatgraphError("doubling curve must consist of whole curves")
    halves = split_regions(F, curve_edges)
    if len(halves) != 2:
        raise FatgraphError(f"doubling curve cuts the surface into {len(halves)} pieces, expected 2")
    keep = next(h for h in halves if keep_region in h)
    on_curve = {F.where[h][0] for h in F.where if F.edge_id[h] in curve_edges}

    def inside(key) -> bool:
        if key[0] == "side":
            h = key[1]
            return F.edge_id[h] not in curve_edges and F.region_of[h] in keep
        if key[0] == "quad":
            _, v, q = key
            return v not in on_curve and F.quadrant_region(v, q) in keep
        return key[1] in keep

    kept = [v for v in MG.vertices if all(inside(a) for a in MG.aliases[v])]
    G = MG.graph.subgraph(kept)
    ks = set(kept)
    in_order = {v: [e for e in es if e.src in ks] for v, es in MG.in_order.items() if v in ks}
    out_order = {v: [e for e in es if e.dst in ks] for v, es in MG.out_order.items() if v in ks}
    return MarkovGraph(F, G, {v: MG.aliases[v] for v in kept}, in_order, out_order)


def to_json(MG: MarkovGraph, reduced: ReducedGraph | None = None) -> dict:
    G = reduced.graph if reduced else MG.graph
    ids = {v: i for i, v in enumerate(G.vertices)}
    out = {
        "framing": MG.framing,
        "vertices": [
            {"id": ids[v], "key": list(v), "aliases": [list(a) for a in MG.aliases[v]]}
            for v in G.vertices
        ],
        "edges": [
            {
                "src": ids[e.src],
                "dst": ids[e.dst],
                "region": e.label[0],
                "stage": e.label[1],
                "index": e.label[2],
                "in_position": e.label[3],
                "exit_side": e.label[4],
                "framing": e.label[5],
            }
            for e in G.edges
        ],
        "in_order": {
            str(ids[v]): [G.edges.index(e) for e in es if e in G.edges]
            for v, es in MG.in_order.items() if v in ids
        },
    }
    if reduced is not None:
        out["removed_cycles"] = [[list(v) for v in c] for c in reduced.removed_cycles]
    return out


def to_dot(MG: MarkovGraph, reduced: ReducedGraph | None = None) -> str:
    G = reduced.graph if reduced else MG.graph
    ids = {v: i for i, v in enumerate(G.vertices)}
    lines = ["digraph markov {"]
    for v, i in ids.items():
        label = "/".join(":".join(str(x) for x in a) for a in MG.aliases[v])
        lines.append(f'  n{i} [label="{label}"];')
    for e in G.edges:
        lines.append(
            f'  n{ids[e.src]} -> n{ids[e.dst]} [label="r{e.label[0]} s{e.label[1]} #{e.label[3]}", framing="fiber"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
