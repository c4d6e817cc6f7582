"""Ideal triangulations: gluing data, isomorphism signatures, cell classes.

Tetrahedron faces are numbered by the opposite vertex. A gluing of face ``f``
of tetrahedron ``t`` is a pair ``(u, p)`` where ``p`` is a permutation of
``0..3`` (a tuple) sending the vertices of ``t`` to the vertices of ``u``;
face ``f`` is glued to face ``p[f]`` of ``u``.

Tetrahedron edges are indexed 0..5 as (0,1), (0,2), (0,3), (1,2), (1,3), (2,3).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

Perm = tuple[int, int, int, int]

EDGE_VERTS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {frozenset(e): i for i, e in enumerate(EDGE_VERTS)}
IDENTITY: Perm = (0, 1, 2, 3)

# Permutations of four letters in lexicographic order; signatures store indices into this list.
S4: tuple[Perm, ...] = tuple(permutations(range(4)))  # type: ignore[assignment]
S4_INDEX = {p: i for i, p in enumerate(S4)}

ALPHABET = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-"
CHAR_VALUE = {c: i for i, c in enumerate(ALPHABET)}


class DecodeError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


def perm_inverse(p: Sequence[int]) -> Perm:
    inv = [0] * 4
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)  # type: ignore[return-value]


def perm_compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """Return p after q."""
    return tuple(p[q[i]] for i in range(4))  # type: ignore[return-value]


def perm_sign(p: Sequence[int]) -> int:
    s = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                s = -s
    return s


def edge_of(a: int, b: int) -> int:
    return EDGE_INDEX[frozenset((a, b))]


def faces_containing_edge(e: int) -> tuple[int, int]:
    a, b = EDGE_VERTS[e]
    c, d = (v for v in range(4) if v not in (a, b))
    return c, d


@dataclass(frozen=True)
class IdealTriangulation:
    gluings: tuple[tuple[tuple[int, Perm], ...], ...]

    @property
    def tet_count(self) -> int:
        return len(self.gluings)

    def glue(self, t: int, f: int) -> tuple[int, Perm]:
        return self.gluings[t][f]

    def check(self) -> None:
        """Raise ValueError if the gluing data is not a closed involutive gluing."""
        n = self.tet_count
        for t, row in enumerate(self.gluings):
            if len(row) != 4:
                raise ValueError(f"tetrahedron {t} does not have 4 faces")
            for f, (u, p) in enumerate(row):
                if not 0 <= u < n or sorted(p) != [0, 1, 2, 3]:
                    raise ValueError(f"bad gluing at ({t}, {f})")
                back_t, back_p = self.gluings[u][p[f]]
                if back_t != t or perm_compose(back_p, p) != IDENTITY:
                    raise ValueError(f"gluing at ({t}, {f}) is not an involution")
                if u == t and p[f] == f:
                    raise ValueError(f"face ({t}, {f}) glued to itself")

    def relabel(self, order: Sequence[int], vmaps: Sequence[Sequence[int]]) -> "IdealTriangulation":
        """Tetrahedron ``order[i]`` becomes ``i``; its vertices are renamed by ``vmaps[order[i]]``."""
        if sorted(order) != list(range(self.tet_count)):
            raise ValueError("order must be a permutation of the tetrahedra")
        pos = {old: new for new, old in enumerate(order)}
        rows = []
        for old in order:
            vm = vmaps[old]
            vm_inv = perm_inverse(vm)
            row: list = [None] * 4
            for f in range(4):
                u, p = self.gluings[old][f]
                q = perm_compose(vmaps[u], perm_compose(p, vm_inv))
                row[vm[f]] = (pos[u], q)
            rows.append(tuple(row))
        return IdealTriangulation(tuple(rows))


def from_gluing_list(n: int, pairs: Iterable[tuple[int, int, int, Sequence[int]]]) -> IdealTriangulation:
    """Build from (t, f, u, perm) entries; each face pair needs to be listed once."""
    rows: list[list] = [[None] * 4 for _ in range(n)]
    for t, f, u, p in pairs:
        p = tuple(p)
        rows[t][f] = (u, p)
        rows[u][p[f]] = (t, perm_inverse(p))
    for t in range(n):
        for f in range(4):
            if rows[t][f] is None:
                raise ValueError(f"face ({t}, {f}) left unglued")
    T = IdealTriangulation(tuple(tuple(r) for r in rows))
    T.check()
    return T


# ---------------------------------------------------------------------------
# Isomorphism signatures


def _read_int(sig: str, pos: int, nchars: int) -> int:
    if pos + nchars > len(sig):
        raise DecodeError("truncated signature", len(sig))
    val = 0
    for i in range(nchars):
        c = sig[pos + i]
        if c not in CHAR_VALUE:
            raise DecodeError(f"invalid character {c!r}", pos + i)
        val |= CHAR_VALUE[c] << (6 * i)
    return val


def _write_int(val: int, nchars: int) -> str:
    return "".join(ALPHABET[(val >> (6 * i)) & 63] for i in range(nchars))


def decode_isosig(sig: str) -> IdealTriangulation:
    if not sig:
        raise DecodeError("empty signature", 0)
    if sig[0] not in CHAR_VALUE:
        raise DecodeError(f"invalid character {sig[0]!r}", 0)
    pos = 0
    n = CHAR_VALUE[sig[0]]
    pos = 1
    nchars = 1
    if n == 63:
        nchars = _read_int(sig, 1, 1)
        n = _read_int(sig, 2, nchars)
        pos = 2 + nchars
    if n == 0:
        if len(sig) != pos:
            raise DecodeError("trailing characters", pos)
        return IdealTriangulation(())

    actions: list[int] = []
    consumed = 0
    while consumed < 4 * n:
        val = _read_int(sig, pos, 1)
        for k in range(3):
            if consumed >= 4 * n:
                if (val >> (2 * k)) & 3:
                    raise DecodeError("nonzero padding in facet actions", pos)
                continue
            a = (val >> (2 * k)) & 3
            if a == 3:
                raise DecodeError("invalid facet action", pos)
            actions.append(a)
            consumed += 1 if a == 0 else 2
        pos += 1
    if consumed != 4 * n:
        raise DecodeError("facet actions overrun", pos - 1)

    joins = actions.count(2)
    dests = []
    for _ in range(joins):
        dests.append(_read_int(sig, pos, nchars))
        pos += nchars
    perms = []
    for _ in range(joins):
        idx = _read_int(sig, pos, 1)
        if idx >= 24:
            raise DecodeError("permutation index out of range", pos)
        perms.append(S4[idx])
        pos += 1
    if pos != len(sig):
        raise DecodeError("trailing characters", pos)

    rows: list[list] = [[None] * 4 for _ in range(n)]
    next_unused = 1
    ai = ji = 0
    for t in range(n):
        for f in range(4):
            if rows[t][f] is not None:
                continue
            a = actions[ai]
            ai += 1
            if a == 0:
                raise DecodeError("boundary faces are not supported", 0)
            if a == 1:
                if next_unused >= n:
                    raise DecodeError("gluing to a nonexistent tetrahedron", 0)
                u, p = next_unused, IDENTITY
                next_unused += 1
            else:
                u, p = dests[ji], perms[ji]
                ji += 1
                if u >= n:
                    raise DecodeError("gluing to a nonexistent tetrahedron", 0)
            g = p[f]
            if rows[u][g] is not None or (u == t and g == f):
                raise DecodeError("non-involutive gluing", 0)
            rows[t][f] = (u, p)
            rows[u][g] = (t, perm_inverse(p))
    if any(r is None for row in rows for r in row):
        raise DecodeError("signature leaves faces unglued", len(sig))
    return IdealTriangulation(tuple(tuple(r) for r in rows))


def _signature_from(T: IdealTriangulation, start: int, start_map: Perm) -> str:
    n = T.tet_count
    image = [-1] * n
    vmap: list[Perm | None] = [None] * n
    pre = [0] * n
    image[start] = 0
    vmap[start] = start_map
    pre[0] = start
    next_unused = 1
    actions: list[int] = []
    dests: list[int] = []
    glues: list[Perm] = []
    for s_img in range(n):
        src = pre[s_img]
        vm_src = vmap[src]
        vm_inv = perm_inverse(vm_src)
        for f_img in range(4):
            f_src = vm_inv[f_img]
            u, p = T.gluings[src][f_src]
            if image[u] >= 0:
                d_img = image[u]
                df_img = vmap[u][p[f_src]]
                if d_img < s_img or (d_img == s_img and df_img < f_img):
                    continue
                actions.append(2)
                dests.append(d_img)
                glues.append(perm_compose(vmap[u], perm_compose(p, vm_inv)))
            else:
                image[u] = next_unused
                pre[next_unused] = u
                vmap[u] = perm_compose(vm_src, perm_inverse(p))
                next_unused += 1
                actions.append(1)
    if next_unused != n:
        raise ValueError("triangulation is not connected")

    nchars = 1
    while n >= 1 << (6 * nchars):
        nchars += 1
    if n < 63:
        out = [ALPHABET[n]]
    else:
        out = [ALPHABET[63], ALPHABET[nchars], _write_int(n, nchars)]
    for i in range(0, len(actions), 3):
        chunk = actions[i:i + 3]
        val = 0
        for k, a in enumerate(chunk):
            val |= a << (2 * k)
        out.append(ALPHABET[val])
    for d in dests:
        out.append(_write_int(d, nchars))
    for g in glues:
        out.append(ALPHABET[S4_INDEX[g]])
    return "".join(out)


def encode_isosig(T: IdealTriangulation) -> str:
    """Canonical signature: the smallest string over all starting tetrahedra and labellings."""
    if T.tet_count == 0:
        return ALPHABET[0]
    return min(
        _signature_from(T, t, p)
        for t in range(T.tet_count)
        for p in S4
    )


# ---------------------------------------------------------------------------
# Cell classes


@dataclass(frozen=True)
class EdgeClass:
    id: int
    incidences: tuple[tuple[int, int, int], ...]  # (tet, tet-edge, +1/-1 direction)

    @property
    def degree(self) -> int:
        return len(self.incidences)


@dataclass(frozen=True)
class VertexClass:
    id: int
    members: frozenset[tuple[int, int]]


class _UnionFind:
    def __init__(self, items: Iterable):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def edge_classes(T: IdealTriangulation) -> list[EdgeClass]:
    """Edge classes with incidences listed in cyclic order around the edge."""
    return _edge_walk(T)[0]


def edge_fans(T: IdealTriangulation) -> list[list[tuple[int, int]]]:
    """For each edge class, the (tet, face) pairs crossed when walking once around it."""
    return _edge_walk(T)[1]


def _edge_walk(T: IdealTriangulation) -> tuple[list[EdgeClass], list[list[tuple[int, int]]]]:
    seen: set[tuple[int, int]] = set()
    classes = []
    fans = []
    for t0 in range(T.tet_count):
        for e0 in range(6):
            if (t0, e0) in seen:
                continue
            fan = []
            crossed = []
            t, (a, b) = t0, EDGE_VERTS[e0]
            # leave through the face opposite the smaller of the two remaining vertices
            exit_face = faces_containing_edge(e0)[0]
            while True:
                e = edge_of(a, b)
                if (t, e) in seen:
                    break
                seen.add((t, e))
                fan.append((t, e, 1 if a < b else -1))
                crossed.append((t, exit_face))
                u, p = T.gluings[t][exit_face]
                entry = p[exit_face]
                t, a, b = u, p[a], p[b]
                exit_face = next(v for v in range(4) if v not in (a, b, entry))
            classes.append(EdgeClass(len(classes), tuple(fan)))
            fans.append(crossed)
    return classes, fans


def edge_class_map(T: IdealTriangulation) -> dict[tuple[int, int], int]:
    return {(t, e): c.id for c in edge_classes(T) for t, e, _ in c.incidences}


def vertex_classes(T: IdealTriangulation) -> list[VertexClass]:
    uf = _UnionFind((t, v) for t in range(T.tet_count) for v in range(4))
    for t in range(T.tet_count):
        for f in range(4):
            u, p = T.gluings[t][f]
            for v in range(4):
                if v != f:
                    uf.union((t, v), (u, p[v]))
    groups: dict = {}
    for t in range(T.tet_count):
        for v in range(4):
            groups.setdefault(uf.find((t, v)), set()).add((t, v))
    ordered = sorted(groups.values(), key=min)
    return [VertexClass(i, frozenset(g)) for i, g in enumerate(ordered)]


def vertex_class_map(T: IdealTriangulation) -> dict[tuple[int, int], int]:
    return {m: c.id for c in vertex_classes(T) for m in c.members}


def face_pairs(T: IdealTriangulation) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """One entry per face class, as ((t, f), (u, g)) with the first element minimal."""
    out = []
    for t in range(T.tet_count):
        for f in range(4):
            u, p = T.gluings[t][f]
            if (t, f) < (u, p[f]):
                out.append(((t, f), (u, p[f])))
    return out


def orientation_signs(T: IdealTriangulation) -> list[int]:
    """Per-tetrahedron signs making every gluing orientation reversing; ValueError if impossible."""
    n = T.tet_count
    sign = [0] * n
    for root in range(n):
        if sign[root]:
            continue
        sign[root] = 1
        stack = [root]
        while stack:
            t = stack.pop()
            for f in range(4):
                u, p = T.gluings[t][f]
                want = -sign[t] * perm_sign(p)
                if sign[u] == 0:
                    sign[u] = want
                    stack.append(u)
                elif sign[u] != want:
                    raise ValueError("triangulation is not orientable")
    return sign


# ---------------------------------------------------------------------------
# Dual graph


@dataclass(frozen=True)
class DualGraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...] = field(default=())


def dual_graph(T: IdealTriangulation) -> DualGraph:
    return DualGraph(T.tet_count, tuple((a[0], b[0]) for a, b in face_pairs(T)))


def _adjacency(G: DualGraph) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(G.vertex_count)]
    for a, b in G.edges:
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def has_doubled_edge(G: DualGraph) -> bool:
    counts: dict[tuple[int, int], int] = {}
    for a, b in G.edges:
        if a != b:
            key = (min(a, b), max(a, b))
            counts[key] = counts.get(key, 0) + 1
    return any(c >= 2 for c in counts.values())


def has_triangle(G: DualGraph) -> bool:
    adj = _adjacency(G)
    for a in range(G.vertex_count):
        for b in adj[a]:
            if b > a and any(c > b for c in adj[a] & adj[b]):
                return True
    return False


# ---------------------------------------------------------------------------
# Homology


def face_class_index(T: IdealTriangulation) -> dict[tuple[int, int], int]:
    idx = {}
    for i, (a, b) in enumerate(face_pairs(T)):
        idx[a] = i
        idx[b] = i
    return idx


def dual_boundaries(
    T: IdealTriangulation, outward: Sequence[Iterable[int]] | None = None
) -> tuple[list[list[int]], list[list[int]]]:
    """Boundary matrices of the dual spine (faces -> tets, edges -> faces).

    A dual 1-cell runs from the tetrahedron the face points out of to the one
    it points into. Without ``outward`` data the first listed side of each face
    pair is treated as the lower one.
    """
    pairs = face_pairs(T)
    fidx = face_class_index(T)
    n, nf = T.tet_count, len(pairs)
    lower = {}
    for i, (a, b) in enumerate(pairs):
        if outward is None or a[1] in set(outward[a[0]]):
            lower[i] = a
        else:
            lower[i] = b
    d1 = [[0] * nf for _ in range(n)]
    for i, (a, b) in enumerate(pairs):
        lo = lower[i]
        hi = b if lo == a else a
        d1[hi[0]][i] += 1
        d1[lo[0]][i] -= 1
    fans = edge_fans(T)
    d2 = [[0] * len(fans) for _ in range(nf)]
    for k, fan in enumerate(fans):
        for t, f in fan:
            i = fidx[t, f]
            d2[i][k] += 1 if lower[i] == (t, f) else -1
    return d1, d2


def homology_h1(T: IdealTriangulation, outward: Sequence[Iterable[int]] | None = None):
    """First homology of the (cusped) manifold, from the dual spine."""
    from .snf import homology_from_boundaries

    orientation_signs(T)  # rejects non-orientable input
    d1, d2 = dual_boundaries(T, outward)
    return homology_from_boundaries(d1, d2, len(face_pairs(T)))


def all_perms() -> list[Perm]:
    return [tuple(p) for p in permutations(range(4))]  # type: ignore[misc]


# ---------------------------------------------------------------------------
# Double covers


def _gf2_nullspace(rows: list[list[int]], nvars: int) -> list[list[int]]:
    """Basis of {x : rows . x = 0 mod 2}."""
    M = [[x & 1 for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(nvars):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                M[i] = [a ^ b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(nvars) if c not in pivots]
    basis = []
    for fc in free:
        x = [0] * nvars
        x[fc] = 1
        for i, pc in enumerate(pivots):
            if M[i][fc]:
                x[pc] = 1
        basis.append(x)
    return basis


def mod2_cohomology_classes(T: IdealTriangulation) -> list[list[int]]:
    """One cocycle per nonzero class in H^1(M; Z/2), as 0/1 values on face classes.

    Representatives vanish on the faces of a fixed spanning tree of the dual graph.
    """
    pairs = face_pairs(T)
    nf = len(pairs)
    tree: set[int] = set()
    reached = {0} if T.tet_count else set()
    changed = True
    while changed:
        changed = False
        for i, ((t, _), (u, _)) in enumerate(pairs):
            if (t in reached) != (u in reached):
                tree.add(i)
                reached |= {t, u}
                changed = True
    _, d2 = dual_boundaries(T)
    rows = [[d2[i][k] for i in range(nf)] for k in range(len(d2[0]) if d2 else 0)]
    rows += [[int(j == i) for j in range(nf)] for i in sorted(tree)]
    basis = _gf2_nullspace(rows, nf)
    classes = []
    for mask in range(1, 1 << len(basis)):
        x = [0] * nf
        for b, vec in enumerate(basis):
            if mask >> b & 1:
                x = [a ^ c for a, c in zip(x, vec)]
        classes.append(x)
    return classes


def double_cover(T: IdealTriangulation, cocycle: Sequence[int]) -> IdealTriangulation:
    """Two-sheeted cover: tetrahedron (t, s) becomes 2t + s; crossing face i shifts the sheet by cocycle[i]."""
    fidx = face_class_index(T)
    rows: list[list] = [[None] * 4 for _ in range(2 * T.tet_count)]
    for t in range(T.tet_count):
        for f in range(4):
            u, p = T.gluings[t][f]
            shift = cocycle[fidx[t, f]] & 1
            for s in (0, 1):
                rows[2 * t + s][f] = (2 * u + (s ^ shift), p)
    C = IdealTriangulation(tuple(tuple(r) for r in rows))  # type: ignore[arg-type]
    C.check()
    return C
