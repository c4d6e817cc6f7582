"""Tabulate predicted tetrahedron counts for small Montesinos parameters.

Two independent routes are compared for four or more cone points. One is the
closed-form count and the other adds concurrent-surgery triple points to a
base configuration.

    python3 demos/montesinos_counts.py
"""
import itertools

from veerflow.montesinos import canonicalize, euler_e, predict_stats, predict_stats_by_surgery

print(f"{'p':>16} {'e':>8} {'tets':>5} {'blue':>5} {'red':>4}")
seen = set()
for n in (3, 4):
    for p in itertools.combinations_with_replacement(range(2, 8), n):
        c = canonicalize(p)
        if c in seen or euler_e(c) >= 0:
            continue
        seen.add(c)
        s = predict_stats(c)
        if n >= 4:
            assert s == predict_stats_by_surgery(c)
        if s.tets <= 20:
            print(f"{str(c):>16} {str(euler_e(c)):>8} {s.tets:>5} {s.blue:>5} {s.red:>4}")
