"""Build the geodesic-flow Markov graph for a closed genus 2 surface.

The surface is cut into hexagons along a pants decomposition, and the graph
has one edge per flow box. Nothing is removed by the reduction step because
the hexagon decomposition contains no squares. The last part restricts the
graph to one side of a separating curve.

    python3 demos/markov_genus_two.py
"""
from collections import Counter

from veerflow.fatgraph import curve_components, dumbbell_pants, hexagon_decomposition
from veerflow.flowgraph import enumerate_cycles
from veerflow.markov import build_markov_graph, reduce_markov, restrict_to_half, split_regions

F = hexagon_decomposition(2)
MG = build_markov_graph(F)
print(f"fatgraph: {F.V} crossings, {F.E} edges, regions of sizes {F.region_sizes()}")
print(f"Markov graph: {len(MG.vertices)} vertices, {len(MG.edges)} edges")
print("vertex kinds:", dict(Counter(v[0] for v in MG.vertices)))

R = reduce_markov(MG)
print(f"after reduction: {len(R.graph.vertices)} vertices, {len(R.removed_cycles)} cycles removed")

short = enumerate_cycles(MG.graph, 4)
print("closed orbits up to length 4:", dict(sorted(Counter(c.length for c in short).items())))

# the dumbbell decomposition has a separating curve
D = hexagon_decomposition(2, dumbbell_pants())
MD = build_markov_graph(D)
for comp in curve_components(D):
    ids = {D.edge_id[h] for h in comp}
    halves = split_regions(D, ids)
    if len(halves) == 2:
        break
for h in halves:
    part = restrict_to_half(MD, ids, min(h))
    print(f"half over regions {sorted(h)}: {len(part.vertices)} vertices, {len(part.edges)} edges")
