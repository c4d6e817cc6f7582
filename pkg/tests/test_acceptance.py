"""Acceptance criteria 1-10.

Each check returns (ok, detail) and prints one PASS/FAIL line. Run under
pytest or directly with ``python3 tests/test_acceptance.py``.
"""
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import networkx as nx  # noqa: E402
import pytest  # noqa: E402

from corpus import (  # noqa: E402
    ACCEPT_266,
    ACCEPT_2244,
    ACCEPTED,
    ALL,
    KNOTS,
    NO_PARALLEL,
    REJECT_266,
    REJECT_2244,
    square_fixtures,
    zeroed,
)
from test_flowgraph import brute_force_cycles, canonical, closed_subgraph_exists  # noqa: E402
from test_snf import check_snf, random_matrix  # noqa: E402
from veerflow.branched import ladderpole_counts  # noqa: E402
from veerflow.census import DOUBLED_REASON, TRIANGLE_REASON, match, parse_census  # noqa: E402
from veerflow.cli import run  # noqa: E402
from veerflow.fatgraph import hexagon_decomposition  # noqa: E402
from veerflow.flowgraph import build_flow_graph, enumerate_cycles, is_infinitesimal_free, reduce  # noqa: E402
from veerflow.markov import build_markov_graph, reduce_markov, square_flanked  # noqa: E402
from veerflow.montesinos import euler_e, predict_stats, predict_stats_by_surgery  # noqa: E402
from veerflow.taut import diagnostics, veering_from_entry  # noqa: E402
from veerflow.triangulation import decode_isosig, homology_h1  # noqa: E402


def criterion_1():
    import io
    import json

    worst = 0.0
    for k in range(1, 11):
        t0 = time.perf_counter()
        s = predict_stats((2, 3, 6 + k))
        worst = max(worst, time.perf_counter() - t0)
        if (s.tets, s.blue, s.red) != (2 * k + 1, 2 * k, 1):
            return False, f"k={k}: got {s}"
        out = io.StringIO()
        if run(["montesinos", "--p", f"2,3,{6 + k}"], out, io.StringIO()) != 0:
            return False, f"k={k}: command failed"
        d = json.loads(out.getvalue())
        if (d["tets"], d["blue"], d["red"]) != (2 * k + 1, 2 * k, 1):
            return False, f"k={k}: command printed {d}"
    return worst < 1e-3, f"k=1..10 exact, slowest {worst * 1e6:.0f} us"


def criterion_2():
    a, b = predict_stats((2, 6, 6)), predict_stats((2, 2, 4, 4))
    da, db = len(ACCEPT_266.split("_")[1]), len(ACCEPT_2244.split("_")[1])
    ok = (a.tets, b.tets) == (da, db) == (14, 16)
    return ok, f"(2,6,6) -> {a.tets} vs {da} digits; (2,2,4,4) -> {b.tets} vs {db} digits"


def bounded_tuples(n, total):
    """All non-negative integer n-tuples with sum at most ``total``."""
    if n == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in bounded_tuples(n - 1, total - first):
            yield (first,) + rest


def criterion_3():
    t0 = time.perf_counter()
    count = 0
    for n in range(4, 8):
        for k in bounded_tuples(n, 6):
            p = tuple(x + 2 for x in k)
            if euler_e(p) >= 0:
                continue
            if predict_stats(p) != predict_stats_by_surgery(p):
                return False, f"mismatch at {p}"
            count += 1
    dt = time.perf_counter() - t0
    return dt < 1.0, f"{count} tuples agree in {dt:.2f} s"


def criterion_4():
    entries, problems = parse_census([ACCEPT_266, ACCEPT_2244, REJECT_266, REJECT_2244])
    if problems:
        return False, f"census problems {problems}"
    r1 = match((2, 6, 6), entries, 3)
    r2 = match((2, 2, 4, 4), entries, 4)
    why1 = {c.entry.raw: c.reason for c in r1.candidates}
    why2 = {c.entry.raw: c.reason for c in r2.candidates}
    ok = (
        r1.selected == [ACCEPT_266]
        and r2.selected == [ACCEPT_2244]
        and why1[REJECT_266] == DOUBLED_REASON
        and why2[REJECT_2244] == TRIANGLE_REASON
    )
    return ok, f"selected {r1.selected[:1]} / {r2.selected[:1]}; reasons '{why1[REJECT_266]}', '{why2[REJECT_2244]}'"


def criterion_5():
    for e in KNOTS + ACCEPTED:
        d = diagnostics(e)
        if not (d["taut"] and d["transverse_taut"] and d["veering"]):
            return False, f"{e} failed: {d}"
        z = diagnostics(zeroed(e))
        if z["taut"]:
            return False, f"zero mutation of {e} passed"
    return True, "4 entries veering, 4 zero mutations rejected"


def criterion_6():
    for e in ALL:
        vt = veering_from_entry(e)
        G = build_flow_graph(vt)
        n = vt.tri.tet_count
        if (len(G.vertices), len(G.edges)) != (n, 3 * n):
            return False, f"{e}: counts {len(G.vertices)}, {len(G.edges)}"
        H = reduce(G).graph
        if len(H.vertices) > 20 or not is_infinitesimal_free(H) or closed_subgraph_exists(H):
            return False, f"{e}: reduced graph has an infinitesimal part"
    return True, f"{len(ALL)} fixtures: |V|=n, |E|=3n, reduced graphs pass the oracle"


def criterion_7():
    t0 = time.perf_counter()
    for g in range(2, 6):
        F = hexagon_decomposition(g)
        chi = F.euler_characteristic
        MG = build_markov_graph(F)
        if (len(MG.vertices), len(MG.edges)) != (-36 * chi, -108 * chi):
            return False, f"g={g}: {len(MG.vertices)}, {len(MG.edges)}"
        R = reduce_markov(MG)
        if R.graph != MG.graph:
            return False, f"g={g}: reduction removed something"
        if g == 2 and (len(MG.vertices), len(MG.edges)) != (72, 216):
            return False, "genus 2 counts"
    dt = time.perf_counter() - t0
    return dt < 1.0, f"g=2..5 exact, reduction identity, {dt:.2f} s"


def criterion_8():
    fixtures = square_fixtures()
    iff_checked = 0
    for name, F in fixtures.items():
        MG = build_markov_graph(F)
        rep = {a: v for v, al in MG.aliases.items() for a in al}
        for r, n in enumerate(F.region_sizes()):
            if n != 4:
                continue
            sides = F.regions[r]
            for i in range(4):
                if rep[("side", F.mate[sides[i]])] != rep[("side", sides[(i + 2) % 4])]:
                    return False, f"{name}: square {r} side {i} not merged"
        R = reduce_markov(MG)
        removed = {v for c in R.removed_cycles for v in c if v[0] == "quad"}
        flanked = {("quad", v, q) for v in range(F.V) for q in range(4) if square_flanked(F, v, q)}
        if not removed <= flanked:
            return False, f"{name}: removed arrow not flanked by squares"
        if name in NO_PARALLEL:
            if not removed or removed != flanked:
                return False, f"{name}: flanked arrows {len(flanked)}, removed {len(removed)}"
            iff_checked += 1
    return iff_checked >= 3, f"merging on {len(fixtures)} fixtures; removed <=> flanked on {iff_checked} without parallel curves"


def criterion_9():
    for e in ACCEPTED:
        counts = ladderpole_counts(veering_from_entry(e)).ladderpoles
        if set(counts.values()) != {1}:
            return False, f"{e}: ladderpoles {counts}"
    for e in KNOTS:
        h = homology_h1(decode_isosig(e.split("_")[0]))
        if str(h) != "Z":
            return False, f"{e}: H1 = {h}"
    return True, "one ladderpole per end; knot H1 = Z"


def criterion_10():
    t0 = time.perf_counter()
    graphs = [build_flow_graph(veering_from_entry(e)) for e in ALL]
    graphs += [build_markov_graph(hexagon_decomposition(g)).graph for g in (2, 3)]
    graphs += [build_markov_graph(F).graph for F in square_fixtures().values()]
    total = 0
    for G in graphs:
        if len(G.vertices) > 300:
            return False, f"fixture with {len(G.vertices)} vertices"
        got = enumerate_cycles(G, 6)
        if canonical(G, got) != brute_force_cycles(G, 6) or len(got) != len(canonical(G, got)):
            return False, "cycle mismatch"
        total += len(got)
    dt_cycles = time.perf_counter() - t0
    rnd = random.Random(1)
    for _ in range(1000):
        check_snf(random_matrix(rnd))
    return dt_cycles < 10.0, f"{len(graphs)} graphs, {total} cycles in {dt_cycles:.1f} s; 1000 SNF checks"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def report(i, fn):
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported like one
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    print(f"criterion {i:2d}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


@pytest.mark.parametrize("i", range(1, 11))
def test_criterion(i, capsys):
    with capsys.disabled():
        print()
        ok = report(i, CRITERIA[i - 1])
    assert ok


if __name__ == "__main__":
    results = [report(i, fn) for i, fn in enumerate(CRITERIA, start=1)]
    sys.exit(0 if all(results) else 1)
