"""Veering triangulations, their flow graphs, and Markov graphs for geodesic flows."""
from .census import load_census, match
from .fatgraph import Fatgraph, hexagon_decomposition, load_fatgraph
from .flowgraph import Digraph, build_flow_graph, enumerate_cycles, reduce
from .markov import build_markov_graph, reduce_markov, restrict_to_half
from .montesinos import predict_stats
from .snf import smith_normal_form
from .taut import VeeringTriangulation, build_veering, veering_from_entry
from .triangulation import IdealTriangulation, decode_isosig, encode_isosig

__all__ = [
    "Digraph",
    "Fatgraph",
    "IdealTriangulation",
    "VeeringTriangulation",
    "build_flow_graph",
    "build_markov_graph",
    "build_veering",
    "decode_isosig",
    "encode_isosig",
    "enumerate_cycles",
    "hexagon_decomposition",
    "load_census",
    "load_fatgraph",
    "match",
    "predict_stats",
    "reduce",
    "reduce_markov",
    "restrict_to_half",
    "smith_normal_form",
    "veering_from_entry",
]
