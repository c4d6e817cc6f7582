"""Four-valent fatgraphs: curve systems on closed oriented surfaces.

A fatgraph lists, for every vertex, four half-edge ids in anticlockwise
order (slots 0..3), plus a pairing of half-edges into edges. The curves
go straight through each vertex (slot 0 with 2, slot 1 with 3).

A half-edge is thought of as leaving its vertex. Walking along it, the
region on the left is found by turning clockwise at the next vertex, so
regions come out traversed anticlockwise. Quadrant ``q`` at a vertex is
the corner between slots ``q`` and ``q + 1``; it belongs to the region on
the left of the half-edge in slot ``q``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class FatgraphError(ValueError):
    pass


@dataclass(frozen=True)
class Fatgraph:
    slots: tuple[tuple[int, int, int, int], ...]
    pairing: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        self.validate()

    # -- basic structure ---------------------------------------------------

    def validate(self) -> None:
        seen: dict[int, tuple[int, int]] = {}
        for v, sl in enumerate(self.slots):
            if len(sl) != 4:
                raise FatgraphError(f"vertex {v} is not 4-valent")
            for s, h in enumerate(sl):
                if h in seen:
                    raise FatgraphError(f"half-edge {h} appears twice")
                seen[h] = (v, s)
        mate: dict[int, int] = {}
        for a, b in self.pairing:
            if a == b:
                raise FatgraphError(f"half-edge {a} paired with itself")
            for h in (a, b):
                if h not in seen:
                    raise FatgraphError(f"unknown half-edge {h}")
                if h in mate:
                    raise FatgraphError(f"half-edge {h} paired twice")
            mate[a], mate[b] = b, a
        missing = set(seen) - set(mate)
        if missing:
            raise FatgraphError(f"unpaired half-edges {sorted(missing)}")
        for r in self._regions(seen, mate):
            if len(r) < 4:
                raise FatgraphError(f"region with {len(r)} sides")

    @staticmethod
    def _regions(where: dict, mate: dict) -> list[tuple[int, ...]]:
        slots_at: dict[int, dict[int, int]] = {}
        for h, (v, s) in where.items():
            slots_at.setdefault(v, {})[s] = h
        done: set[int] = set()
        regions = []
        for h0 in sorted(where):
            if h0 in done:
                continue
            cyc = []
            h = h0
            while h not in done:
                done.add(h)
                cyc.append(h)
                w, s = where[mate[h]]
                h = slots_at[w][(s - 1) % 4]
            regions.append(tuple(cyc))
        return regions

    @cached_property
    def where(self) -> dict[int, tuple[int, int]]:
        return {h: (v, s) for v, sl in enumerate(self.slots) for s, h in enumerate(sl)}

    @cached_property
    def mate(self) -> dict[int, int]:
        m = {}
        for a, b in self.pairing:
            m[a], m[b] = b, a
        return m

    @cached_property
    def regions(self) -> list[tuple[int, ...]]:
        """Each region as its sides in anticlockwise order (half-edges with the region on their left)."""
        return self._regions(self.where, self.mate)

    @cached_property
    def region_of(self) -> dict[int, int]:
        return {h: i for i, r in enumerate(self.regions) for h in r}

    def quadrant_region(self, v: int, q: int) -> int:
        return self.region_of[self.slots[v][q % 4]]

    @cached_property
    def edge_id(self) -> dict[int, int]:
        out = {}
        for i, (a, b) in enumerate(sorted(tuple(sorted(p)) for p in self.pairing)):
            out[a] = out[b] = i
        return out

    @property
    def V(self) -> int:
        return len(self.slots)

    @property
    def E(self) -> int:
        return len(self.pairing)

    @property
    def F(self) -> int:
        return len(self.regions)

    @property
    def euler_characteristic(self) -> int:
        return self.V - self.E + self.F

    def region_sizes(self) -> list[int]:
        return [len(r) for r in self.regions]

    def straight(self, h: int) -> int:
        """The half-edge continuing the curve that arrives along ``h``."""
        w, s = self.where[self.mate[h]]
        return self.slots[w][(s + 2) % 4]

    # -- io ----------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": [{"slots": list(sl)} for sl in self.slots],
            "pairing": [list(p) for p in self.pairing],
        }


def fatgraph_from_json(data: dict) -> Fatgraph:
    try:
        slots = tuple(tuple(int(h) for h in v["slots"]) for v in data["vertices"])
        pairing = tuple((int(a), int(b)) for a, b in data["pairing"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FatgraphError(f"malformed fatgraph data: {exc}") from exc
    return Fatgraph(slots, pairing)  # type: ignore[arg-type]


def load_fatgraph(path: str) -> Fatgraph:
    with open(path, encoding="utf-8") as fh:
        return fatgraph_from_json(json.load(fh))


def curve_components(F: Fatgraph) -> list[tuple[int, ...]]:
    """Closed curves, each as the sequence of half-edges traversed in one direction."""
    seen: set[int] = set()
    comps = []
    for h0 in sorted(F.where):
        if h0 in seen:
            continue
        cyc = []
        h = h0
        while h not in seen:
            seen.add(h)
            cyc.append(h)
            h = F.straight(h)
        if h != h0:  # pragma: no cover - straight() is a permutation
            raise FatgraphError("curve traversal is not closed")
        for x in cyc:  # the reverse traversal belongs to the same curve
            seen.add(F.mate[x])
        comps.append(tuple(cyc))
    return comps


# ---------------------------------------------------------------------------
# Construction from polygons


def from_polygons(faces: Sequence[Sequence], pairs: Iterable[tuple]) -> Fatgraph:
    """Glue oriented polygons. ``faces`` lists side labels anticlockwise;
    ``pairs`` matches each side with the side it is glued to (traversed the other way)."""
    ids: dict = {}
    nxt: dict[int, int] = {}
    for face in faces:
        for x in face:
            if x in ids:
                raise FatgraphError(f"side {x!r} used twice")
            ids[x] = len(ids)
        for a, b in zip(face, list(face[1:]) + [face[0]]):
            nxt[ids[a]] = ids[b]
    mate: dict[int, int] = {}
    for a, b in pairs:
        mate[ids[a]], mate[ids[b]] = ids[b], ids[a]
    if len(mate) != len(ids):
        raise FatgraphError("not every side is glued")
    # turning clockwise at a vertex: rot_prev(x) = next(mate(x))
    seen: set[int] = set()
    slots = []
    for x0 in range(len(ids)):
        if x0 in seen:
            continue
        orbit = []
        x = x0
        while x not in seen:
            seen.add(x)
            orbit.append(x)
            x = nxt[mate[x]]
        if len(orbit) != 4:
            raise FatgraphError(f"vertex of valence {len(orbit)}")
        slots.append((orbit[0], orbit[3], orbit[2], orbit[1]))
    pairing = sorted({tuple(sorted((a, b))) for a, b in mate.items()})
    return Fatgraph(tuple(slots), tuple(pairing))  # type: ignore[arg-type]


def necklace_pants(g: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """A pants graph for genus g: a cycle of 2g-2 pants with neighbours also joined in pairs."""
    m = 2 * g - 2
    glue = [((i, 1), ((i + 1) % m, 0)) for i in range(m)]
    glue += [((2 * i, 2), (2 * i + 1, 2)) for i in range(m // 2)]
    return glue


def dumbbell_pants() -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Genus 2: two one-holed tori joined along a separating curve (legs 2)."""
    return [((0, 0), (0, 1)), ((0, 2), (1, 2)), ((1, 0), (1, 1))]


def hexagon_decomposition(g: int, pants: Sequence | None = None) -> Fatgraph:
    """Pants curves plus seams: every pair of pants is cut into two hexagons."""
    if g < 2:
        raise ValueError("genus must be at least 2")
    glue = list(pants) if pants is not None else necklace_pants(g)
    npants = 2 * g - 2
    legs = sorted(x for pair in glue for x in pair)
    if legs != sorted((p, j) for p in range(npants) for j in range(3)):
        raise ValueError("pants gluing must use every leg exactly once")
    faces = []
    pairs = []
    for p in range(npants):
        front = []
        back = []
        for j in range(3):
            front += [("bF", p, j), ("sF", p, j)]
        for j in (0, 2, 1):
            back += [("bK", p, j), ("sK", p, (j - 1) % 3)]
        faces += [front, back]
        pairs += [(("sF", p, j), ("sK", p, j)) for j in range(3)]
    for (p, j), (q, k) in glue:
        pairs.append((("bF", p, j), ("bF", q, k)))
        pairs.append((("bK", p, j), ("bK", q, k)))
    return from_polygons(faces, pairs)


def medial(F: Fatgraph) -> Fatgraph:
    """Medial graph: a vertex per edge of ``F``, a region per vertex and per region of ``F``."""
    faces = []
    pairs = []
    for v, sl in enumerate(F.slots):
        faces.append([("A", v, q) for q in range(4)])
    for r in F.regions:
        cyc = []
        for i in range(len(r)):
            h_next = r[(i + 1) % len(r)]
            w, s = F.where[h_next]
            cyc.append(("B", w, s))
        faces.append(cyc)
    for v in range(F.V):
        for q in range(4):
            pairs.append((("A", v, q), ("B", v, q)))
    return from_polygons(faces, pairs)


def add_parallel(F: Fatgraph, curve: Sequence[int]) -> Fatgraph:
    """Push a copy of an embedded curve off to its left.

    ``curve`` is a traversal as returned by :func:`curve_components`; the
    curve must not cross itself. Each edge of the curve gains a square between
    the curve and its copy.
    """
    where, mate = F.where, F.mate
    verts = [where[h][0] for h in curve]
    if len(set(verts)) != len(verts):
        raise FatgraphError("curve crosses itself")
    next_id = max(where) + 1
    slots = [list(s) for s in F.slots]
    new_pairs = {tuple(sorted(p)) for p in F.pairing}
    m = len(curve)
    left_half = []
    for h in curve:
        v, s = where[h]
        left_half.append(slots[v][(s + 1) % 4])
    new_slots = []
    for j in range(m):
        new_slots.append([next_id + 4 * j + k for k in range(4)])  # forward, left, back, right
    owner = {h: j for j, h in enumerate(left_half)}
    for j in range(m):
        lh = left_half[j]
        partner = mate[lh]
        new_pairs.discard(tuple(sorted((lh, partner))))
    for j in range(m):
        lh = left_half[j]
        partner = mate[lh]
        fwd, left, back, right = new_slots[j]
        new_pairs.add(tuple(sorted((right, lh))))
        if partner in owner:
            other = new_slots[owner[partner]][1]
            new_pairs.add(tuple(sorted((left, other))))
        else:
            new_pairs.add(tuple(sorted((left, partner))))
        nb = new_slots[(j + 1) % m][2]
        new_pairs.add(tuple(sorted((fwd, nb))))
    slots += new_slots
    return Fatgraph(tuple(tuple(s) for s in slots), tuple(sorted(new_pairs)))  # type: ignore[arg-type]
