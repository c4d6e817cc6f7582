"""Combinatorics of the unstable branched surface dual to a veering triangulation.

Sectors correspond to edges, branch-locus arcs to faces and triple points to
tetrahedra, so nothing is embedded: everything is read off the gluing data.

Inside each tetrahedron the branch locus has two strands, one for each
equatorial edge whose colour differs from the top edge. The strand for such
an edge runs from the top face containing it to the bottom face containing it.
"""
from __future__ import annotations

from dataclasses import dataclass

from .taut import BLUE, RED, VeeringTriangulation
from .triangulation import EDGE_VERTS, vertex_class_map, vertex_classes


@dataclass(frozen=True)
class TriplePoint:
    tet: int
    color: str


@dataclass(frozen=True)
class Strand:
    tet: int
    edge: int        # equatorial tet-edge it belongs to
    entry_face: int  # a top face of ``tet``
    exit_face: int   # a bottom face of ``tet``
    vertex: int      # endpoint of ``edge`` on the top edge


@dataclass(frozen=True)
class BranchComponent:
    strands: tuple[Strand, ...]
    orientation: str = "top-to-bottom"

    @property
    def faces(self) -> tuple[tuple[int, int], ...]:
        """Traversed faces, each as (tet, face) on the side the strand leaves through."""
        return tuple((s.tet, s.exit_face) for s in self.strands)


@dataclass(frozen=True)
class CuspReport:
    ladderpoles: dict[int, int]
    assignment: tuple[int, ...]  # end of each component


def triple_points(vt: VeeringTriangulation) -> tuple[list[TriplePoint], tuple[int, int]]:
    pts = [TriplePoint(t, vt.colors[vt.top_class(t)]) for t in range(vt.tri.tet_count)]
    blue = sum(p.color == BLUE for p in pts)
    return pts, (blue, len(pts) - blue)


def strands(vt: VeeringTriangulation) -> list[Strand]:
    out = []
    for t in range(vt.tri.tet_count):
        r = vt.roles[t]
        top_color = vt.colors[vt.top_class(t)]
        a, b = EDGE_VERTS[r.top]
        for e in r.equator:
            if vt.edge_color(t, e) == top_color:
                continue
            u, v = EDGE_VERTS[e]
            apex = u if u in (a, b) else v
            other = v if apex == u else u
            far_top = b if apex == a else a
            far_bottom = next(w for w in range(4) if w not in (a, b, other))
            # the top face misses the far bottom vertex, the bottom face misses the far top vertex
            out.append(Strand(t, e, far_bottom, far_top, apex))
    return out


def branch_components(vt: VeeringTriangulation) -> list[BranchComponent]:
    ss = strands(vt)
    by_entry = {(s.tet, s.entry_face): s for s in ss}
    if len(by_entry) != len(ss):
        raise ValueError("two strands enter the same face")
    seen: set[tuple[int, int]] = set()
    comps = []
    for s0 in ss:
        key0 = (s0.tet, s0.edge)
        if key0 in seen:
            continue
        cyc = []
        s = s0
        while (s.tet, s.edge) not in seen:
            seen.add((s.tet, s.edge))
            cyc.append(s)
            u, p = vt.tri.gluings[s.tet][s.exit_face]
            s = by_entry[u, p[s.exit_face]]
        if s is not s0:
            raise ValueError("strand chaining is not a permutation")
        comps.append(BranchComponent(tuple(cyc)))
    return comps


class CuspAssignmentError(ValueError):
    pass


def ladderpole_counts(vt: VeeringTriangulation) -> CuspReport:
    """Assign each branch component to the end it faces and count per end."""
    vmap = vertex_class_map(vt.tri)
    ends = [c.id for c in vertex_classes(vt.tri)]
    counts = {e: 0 for e in ends}
    assignment = []
    for comp in branch_components(vt):
        owners = {vmap[s.tet, s.vertex] for s in comp.strands}
        if len(owners) != 1:
            raise CuspAssignmentError(f"component meets ends {sorted(owners)}")
        end = owners.pop()
        counts[end] += 1
        assignment.append(end)
    return CuspReport(counts, tuple(assignment))


def verify_vbs_axioms(vt: VeeringTriangulation) -> list[str]:
    """Check the dual-side consequences of the veering conditions; returns violations."""
    problems = []
    n = len(vt.colors)
    tops, bottoms = [0] * n, [0] * n
    for t in range(vt.tri.tet_count):
        tops[vt.top_class(t)] += 1
        bottoms[vt.bottom_class(t)] += 1
    for k in range(n):
        if tops[k] != 1:
            problems.append(f"edge {k} is the top edge of {tops[k]} tetrahedra")
        if bottoms[k] != 1:
            problems.append(f"edge {k} is the bottom edge of {bottoms[k]} tetrahedra")
    for t in range(vt.tri.tet_count):
        r = vt.roles[t]
        cols = [vt.edge_color(t, e) for e in r.equator]
        if cols[0] == cols[1] or cols[0] != cols[2] or cols[1] != cols[3]:
            problems.append(f"tetrahedron {t}: equator does not alternate")
    # each face must carry exactly one incoming strand and one outgoing strand
    try:
        comps = branch_components(vt)
        length = sum(len(c.strands) for c in comps)
        if length != 2 * vt.tri.tet_count:
            problems.append("strands do not partition")
    except ValueError as exc:
        problems.append(str(exc))
    return problems


def recolor(vt: VeeringTriangulation, edge: int) -> VeeringTriangulation:
    """Copy with one edge class's colour flipped (used to build non-examples)."""
    cols = list(vt.colors)
    cols[edge] = RED if cols[edge] == BLUE else BLUE
    return VeeringTriangulation(vt.tri, vt.angles, vt.top_choice, tuple(cols), vt.signs)


def report(vt: VeeringTriangulation) -> dict:
    pts, (blue, red) = triple_points(vt)
    comps = branch_components(vt)
    cusp = ladderpole_counts(vt)
    return {
        "triple_points": {"count": len(pts), "blue": blue, "red": red},
        "components": [[list(f) for f in c.faces] for c in comps],
        "ladderpoles": {str(k): v for k, v in sorted(cusp.ladderpoles.items())},
    }
