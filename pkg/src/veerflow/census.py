"""Match census entries against predicted Montesinos statistics.

A census is a text file with one ``<isosig>_<digits>`` entry per line. Blank
lines and lines starting with ``#`` are skipped. Statistics are computed
lazily and cached on the entry.

Colour counts are taken under both ambient orientations: an isomorphism
signature does not fix an orientation, and mirroring swaps red and blue.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from .branched import ladderpole_counts
from .montesinos import canonicalize, euler_e, predict_stats
from .taut import build_veering, parse_taut_angles, split_entry
from .triangulation import (
    DecodeError,
    decode_isosig,
    dual_graph,
    has_doubled_edge,
    has_triangle,
    homology_h1,
    vertex_classes,
)

DOUBLED_REASON = "two edges between them"
TRIANGLE_REASON = "dual graph has triangles"


@dataclass(frozen=True)
class CensusProblem:
    line: int
    text: str
    message: str


@dataclass(frozen=True)
class EntryStats:
    tets: int
    colors: tuple[tuple[int, int], ...]   # (blue, red) per orientation, as found then mirrored
    cusps: int
    ladderpoles: tuple[int, ...]          # per end
    h1_rank: int
    h1_torsion: tuple[int, ...]
    doubled: bool
    triangles: bool

    def to_json(self) -> dict:
        return {
            "tets": self.tets,
            "colors": [{"blue": b, "red": r} for b, r in self.colors],
            "cusps": self.cusps,
            "ladderpoles": list(self.ladderpoles),
            "h1": {"rank": self.h1_rank, "torsion": list(self.h1_torsion)},
            "doubled_edge": self.doubled,
            "triangles": self.triangles,
        }


@dataclass
class CensusEntry:
    raw: str
    line: int = 0
    _stats: EntryStats | None = field(default=None, repr=False, compare=False)

    @property
    def isosig(self) -> str:
        return split_entry(self.raw)[0]

    @property
    def digits(self) -> str:
        return split_entry(self.raw)[1]


def parse_census(lines: Iterable[str]) -> tuple[list[CensusEntry], list[CensusProblem]]:
    entries: list[CensusEntry] = []
    problems: list[CensusProblem] = []
    for no, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            sig, digits = split_entry(text)
            T = decode_isosig(sig)
            if len(digits) != T.tet_count:
                raise ValueError(f"{len(digits)} angle digits for {T.tet_count} tetrahedra")
            parse_taut_angles(digits, T)
        except (DecodeError, ValueError) as exc:
            problems.append(CensusProblem(no, text, str(exc)))
            continue
        entries.append(CensusEntry(text, no))
    return entries, problems


def load_census(source: str | IO[str]) -> tuple[list[CensusEntry], list[CensusProblem]]:
    """Read a census from a path, from ``"-"`` (stdin) or from an open text stream."""
    if source == "-":
        return parse_census(sys.stdin)
    if isinstance(source, str):
        with open(source, encoding="utf-8") as fh:
            return parse_census(fh)
    return parse_census(source)


def entry_stats(e: CensusEntry) -> EntryStats:
    """Raises the validation error if the entry is not veering."""
    if e._stats is not None:
        return e._stats
    sig, digits = split_entry(e.raw)
    T = decode_isosig(sig)
    angles = parse_taut_angles(digits, T)
    vt = build_veering(T, angles)
    cusp = ladderpole_counts(vt)
    h1 = homology_h1(T)
    G = dual_graph(T)
    e._stats = EntryStats(
        tets=T.tet_count,
        colors=((vt.blue, vt.red), (vt.red, vt.blue)),
        cusps=len(vertex_classes(T)),
        ladderpoles=tuple(cusp.ladderpoles[k] for k in sorted(cusp.ladderpoles)),
        h1_rank=h1.rank,
        h1_torsion=h1.torsion,
        doubled=has_doubled_edge(G),
        triangles=has_triangle(G),
    )
    return e._stats


# ---------------------------------------------------------------------------


@dataclass
class Candidate:
    entry: CensusEntry
    trail: list[dict] = field(default_factory=list)
    eliminated_by: str | None = None
    reason: str | None = None

    def check(self, name: str, ok: bool, detail: str) -> bool:
        self.trail.append({"filter": name, "passed": ok, "detail": detail})
        if not ok:
            self.eliminated_by = name
            self.reason = detail
        return ok

    def to_json(self) -> dict:
        return {
            "entry": self.entry.raw,
            "line": self.entry.line,
            "trail": self.trail,
            "eliminated_by": self.eliminated_by,
            "reason": self.reason,
        }


@dataclass
class MatchReport:
    p: tuple[int, ...]
    predicted: dict
    h1_rank: int
    allow_doubled: bool
    allow_triangles: bool
    candidates: list[Candidate]

    @property
    def selected(self) -> list[str]:
        return [c.entry.raw for c in self.candidates if c.eliminated_by is None]

    def to_json(self) -> dict:
        return {
            "p": list(self.p),
            "canonical": list(canonicalize(self.p)),
            "e": str(euler_e(self.p)),
            "predicted": self.predicted,
            "h1_rank": self.h1_rank,
            "allow_doubled": self.allow_doubled,
            "allow_triangles": self.allow_triangles,
            "candidates": [c.to_json() for c in self.candidates],
            "selected": self.selected,
        }


def match(
    p: Sequence[int],
    census: Sequence[CensusEntry],
    h1_rank: int,
    *,
    allow_doubled: bool = False,
    allow_triangles: bool = False,
) -> MatchReport:
    """Run the filters in order; structural predicates only break ties."""
    p = tuple(p)
    want = predict_stats(p)  # raises for e >= 0
    cands = [Candidate(e) for e in census]
    alive = []
    for c in cands:
        try:
            st = entry_stats(c.entry)
        except ValueError as exc:
            c.check("veering", False, str(exc))
            continue
        counts_ok = st.tets == want.tets and (want.blue, want.red) in st.colors
        if not c.check(
            "counts",
            counts_ok,
            f"tets {st.tets}, blue/red {st.colors[0][0]}/{st.colors[0][1]} (mirror {st.colors[1][0]}/{st.colors[1][1]})",
        ):
            continue
        if not c.check("ladderpoles", all(k == 1 for k in st.ladderpoles), f"per end {list(st.ladderpoles)}"):
            continue
        h1_ok = st.h1_rank == h1_rank and not st.h1_torsion
        torsion = "".join(f" + Z_{d}" for d in st.h1_torsion)
        if not c.check("homology", h1_ok, f"rank {st.h1_rank}{torsion}"):
            continue
        alive.append((c, st))
    if len(alive) > 1:
        for c, st in alive:
            if not allow_doubled and not c.check("structure", not st.doubled, DOUBLED_REASON if st.doubled else "no doubled edge"):
                continue
            if not allow_triangles:
                c.check("structure", not st.triangles, TRIANGLE_REASON if st.triangles else "no triangles")
    predicted = {"tets": want.tets, "blue": want.blue, "red": want.red}
    return MatchReport(p, predicted, h1_rank, allow_doubled, allow_triangles, cands)
