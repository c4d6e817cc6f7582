"""Taut angle structures, transverse coorientations and veering colours.

A taut structure is stored as one selector per tetrahedron: selector ``d``
puts the angle pi on the opposite pair of tetrahedron edges ``d`` and
``5 - d`` (that is, on (0, d+1) and its complement).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .triangulation import (
    EDGE_VERTS,
    IdealTriangulation,
    decode_isosig,
    edge_class_map,
    edge_classes,
    edge_of,
    face_pairs,
    orientation_signs,
    perm_sign,
)

RED, BLUE = "red", "blue"


class NotTautError(ValueError):
    pass


class NotTransverseTautError(ValueError):
    pass


class NotVeeringError(ValueError):
    def __init__(self, message: str, edge: int | None = None):
        super().__init__(message)
        self.edge = edge


def pi_edges(selector: int) -> tuple[int, int]:
    return selector, 5 - selector


def parse_taut_angles(digits: str, T: IdealTriangulation) -> tuple[int, ...]:
    if len(digits) != T.tet_count:
        raise NotTautError(f"expected {T.tet_count} angle digits, got {len(digits)}")
    out = []
    for i, c in enumerate(digits):
        if c not in "012":
            raise NotTautError(f"bad angle digit {c!r} at position {i}")
        out.append(int(c))
    return tuple(out)


def split_entry(entry: str) -> tuple[str, str]:
    """Split ``<isosig>_<digits>``."""
    sig, sep, digits = entry.strip().partition("_")
    if not sep:
        raise NotTautError(f"missing angle suffix in {entry!r}")
    return sig, digits


def pi_incidences(T: IdealTriangulation, angles: Sequence[int]) -> list[int]:
    """Number of pi angles around each edge class."""
    emap = edge_class_map(T)
    counts = [0] * len(set(emap.values())) if emap else []
    for t, d in enumerate(angles):
        for e in pi_edges(d):
            counts[emap[t, e]] += 1
    return counts


def validate_taut(T: IdealTriangulation, angles: Sequence[int]) -> tuple[bool, list[int]]:
    """Return (ok, edge classes whose pi count is not 2)."""
    bad = [i for i, c in enumerate(pi_incidences(T, angles)) if c != 2]
    return not bad, bad


def outward_faces(angles_t: int, top_choice: int) -> frozenset[int]:
    """Faces pointing up out of a tetrahedron: the two faces containing its top edge."""
    top = pi_edges(angles_t)[top_choice]
    a, b = EDGE_VERTS[top]
    return frozenset(v for v in range(4) if v not in (a, b))


def derive_transverse_taut(T: IdealTriangulation, angles: Sequence[int]) -> tuple[int, ...]:
    """Per tetrahedron, which of its two pi edges (0 or 1) is the top edge.

    Each face must point out of exactly one of the two tetrahedra it meets.
    The representative returned has face 0 of tetrahedron 0 pointing out.
    """
    n = T.tet_count
    choice = [-1] * n
    for root in range(n):
        if choice[root] >= 0:
            continue
        choice[root] = 0 if 0 in outward_faces(angles[root], 0) else 1
        stack = [root]
        while stack:
            t = stack.pop()
            out_t = outward_faces(angles[t], choice[t])
            for f in range(4):
                u, p = T.gluings[t][f]
                g = p[f]
                want_out = f not in out_t
                for c in (0, 1):
                    if (g in outward_faces(angles[u], c)) == want_out:
                        break
                else:  # pragma: no cover - each face is outward for exactly one choice
                    raise NotTransverseTautError("inconsistent face")
                if choice[u] < 0:
                    choice[u] = c
                    stack.append(u)
                elif choice[u] != c:
                    raise NotTransverseTautError(
                        f"coorientation contradiction across face {f} of tetrahedron {t}"
                    )
    return tuple(choice)


def reverse_coorientation(top: Sequence[int]) -> tuple[int, ...]:
    return tuple(1 - c for c in top)


def coorientation_ok(T: IdealTriangulation, angles: Sequence[int], top: Sequence[int]) -> bool:
    for (t, f), (u, g) in face_pairs(T):
        if (f in outward_faces(angles[t], top[t])) == (g in outward_faces(angles[u], top[u])):
            return False
    return True


@dataclass(frozen=True)
class TetRoles:
    top: int        # tet-edge index
    bottom: int
    equator: tuple[int, int, int, int]  # anticlockwise from above, starting at an end of the top edge
    equator_colors: tuple[str, str, str, str]


def _equator(angles_t: int, top_choice: int, sign: int) -> tuple[int, int, int, int]:
    top = pi_edges(angles_t)[top_choice]
    bottom = 5 - top
    a, b = EDGE_VERTS[top]
    c, d = EDGE_VERTS[bottom]
    # (a, c, b, d) runs anticlockwise seen from above exactly when the ordered
    # tuple (a, b, c, d) is positively oriented.
    if perm_sign((a, b, c, d)) * sign < 0:
        c, d = d, c
    return edge_of(a, c), edge_of(c, b), edge_of(b, d), edge_of(d, a)


def derive_veering_colors(
    T: IdealTriangulation,
    angles: Sequence[int],
    top: Sequence[int],
    signs: Sequence[int] | None = None,
) -> tuple[str, ...]:
    """Colour of each edge class; each tetrahedron reads red, blue, red, blue around its equator."""
    if signs is None:
        signs = orientation_signs(T)
    emap = edge_class_map(T)
    colors: list[str | None] = [None] * (max(emap.values()) + 1 if emap else 0)
    for t in range(T.tet_count):
        eq = _equator(angles[t], top[t], signs[t])
        for e, col in zip(eq, (RED, BLUE, RED, BLUE)):
            k = emap[t, e]
            if colors[k] is None:
                colors[k] = col
            elif colors[k] != col:
                raise NotVeeringError(f"colour clash on edge {k}", k)
    for k, c in enumerate(colors):
        if c is None:
            raise NotVeeringError(f"edge {k} receives no colour", k)
    return tuple(colors)  # type: ignore[arg-type]


@dataclass(frozen=True)
class VeeringTriangulation:
    tri: IdealTriangulation
    angles: tuple[int, ...]
    top_choice: tuple[int, ...]
    colors: tuple[str, ...]
    signs: tuple[int, ...]

    @cached_property
    def edge_map(self) -> dict[tuple[int, int], int]:
        return edge_class_map(self.tri)

    @cached_property
    def roles(self) -> tuple[TetRoles, ...]:
        return tuple(self._roles(t) for t in range(self.tri.tet_count))

    def _roles(self, t: int) -> TetRoles:
        top = pi_edges(self.angles[t])[self.top_choice[t]]
        eq = _equator(self.angles[t], self.top_choice[t], self.signs[t])
        cols = tuple(self.colors[self.edge_map[t, e]] for e in eq)
        return TetRoles(top, 5 - top, eq, cols)  # type: ignore[arg-type]

    def edge_color(self, t: int, e: int) -> str:
        return self.colors[self.edge_map[t, e]]

    def top_class(self, t: int) -> int:
        return self.edge_map[t, self.roles[t].top]

    def bottom_class(self, t: int) -> int:
        return self.edge_map[t, self.roles[t].bottom]

    def outward(self, t: int) -> frozenset[int]:
        return outward_faces(self.angles[t], self.top_choice[t])

    @property
    def blue(self) -> int:
        return self.colors.count(BLUE)

    @property
    def red(self) -> int:
        return self.colors.count(RED)


def build_veering(
    T: IdealTriangulation,
    angles: Sequence[int],
    *,
    reverse: bool = False,
    mirror: bool = False,
) -> VeeringTriangulation:
    """Validate and assemble. ``reverse`` flips the coorientation, ``mirror`` the ambient orientation."""
    ok, bad = validate_taut(T, angles)
    if not ok:
        raise NotTautError(f"angle sum violated on edges {bad}")
    signs = orientation_signs(T)
    if mirror:
        signs = [-s for s in signs]
    top = derive_transverse_taut(T, angles)
    if reverse:
        top = reverse_coorientation(top)
    colors = derive_veering_colors(T, angles, top, signs)
    return VeeringTriangulation(T, tuple(angles), tuple(top), colors, tuple(signs))


def veering_from_entry(entry: str, **kw) -> VeeringTriangulation:
    sig, digits = split_entry(entry)
    T = decode_isosig(sig)
    return build_veering(T, parse_taut_angles(digits, T), **kw)


def top_bottom_multiplicities(vt: VeeringTriangulation) -> tuple[list[int], list[int]]:
    n = len(vt.colors)
    tops, bottoms = [0] * n, [0] * n
    for t in range(vt.tri.tet_count):
        tops[vt.top_class(t)] += 1
        bottoms[vt.bottom_class(t)] += 1
    return tops, bottoms


def diagnostics(entry: str) -> dict:
    """JSON-ready summary used by the command line."""
    from .triangulation import vertex_classes

    out: dict = {"taut": False, "transverse_taut": False, "veering": False}
    sig, digits = split_entry(entry)
    T = decode_isosig(sig)
    out["tets"] = T.tet_count
    out["cusps"] = len(vertex_classes(T))
    angles = parse_taut_angles(digits, T)
    ok, bad = validate_taut(T, angles)
    out["taut"] = ok
    if not ok:
        out["errors"] = [f"angle sum violated on edge {k}" for k in bad]
        return out
    try:
        top = derive_transverse_taut(T, angles)
    except (NotTransverseTautError, ValueError) as exc:
        out["errors"] = [str(exc)]
        return out
    out["transverse_taut"] = True
    try:
        colors = derive_veering_colors(T, angles, top)
    except NotVeeringError as exc:
        out["errors"] = [str(exc)]
        return out
    out["veering"] = True
    out["blue"] = colors.count(BLUE)
    out["red"] = colors.count(RED)
    return out


__all__ = [
    "BLUE",
    "RED",
    "NotTautError",
    "NotTransverseTautError",
    "NotVeeringError",
    "TetRoles",
    "VeeringTriangulation",
    "build_veering",
    "coorientation_ok",
    "derive_transverse_taut",
    "derive_veering_colors",
    "diagnostics",
    "edge_classes",
    "parse_taut_angles",
    "pi_edges",
    "pi_incidences",
    "reverse_coorientation",
    "split_entry",
    "top_bottom_multiplicities",
    "validate_taut",
    "veering_from_entry",
]
