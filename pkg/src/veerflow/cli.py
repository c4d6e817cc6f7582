"""Command line entry point.

Exit codes: 0 success, 1 validation failure (details on stderr), 2 I/O
failure or bad usage. JSON output always has sorted keys. The default
output format can be set with the ``VEERFLOW_FORMAT`` environment variable.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import branched, census, fatgraph, flowgraph, markov, montesinos, taut

FORMAT_ENV = "VEERFLOW_FORMAT"
PARALLEL_WARNING = "warning: curves are not checked for parallel components; the flow need not be Anosov if they exist"


class ValidationFailure(Exception):
    """Raised after the diagnostics have been written."""


def _default_format(allowed: Sequence[str], fallback: str = "json") -> str:
    fmt = os.environ.get(FORMAT_ENV, fallback)
    return fmt if fmt in allowed else fallback


def _dump(obj, out) -> None:
    json.dump(obj, out, sort_keys=True, indent=2)
    out.write("\n")


def _text(obj, out, indent: str = "") -> None:
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, str, bool)) for x in v):
                out.write(f"{indent}{k}:\n")
                _text(v, out, indent + "  ")
            else:
                out.write(f"{indent}{k}: {v}\n")
    elif isinstance(obj, list):
        for x in obj:
            if isinstance(x, (dict, list)):
                out.write(f"{indent}-\n")
                _text(x, out, indent + "  ")
            else:
                out.write(f"{indent}- {x}\n")
    else:
        out.write(f"{indent}{obj}\n")


def _emit(obj, fmt: str, out) -> None:
    if fmt == "text":
        _text(obj, out)
    else:
        _dump(obj, out)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


# -- subcommands -------------------------------------------------------------


def cmd_validate(args, out, err) -> None:
    diag = taut.diagnostics(args.entry)
    _emit(diag, args.format, out)
    if not diag["veering"]:
        for msg in diag.get("errors", []):
            err.write(msg + "\n")
        raise ValidationFailure


def _flow_payload(G, reduced):
    data = flowgraph.to_json(reduced.graph if reduced else G)
    if reduced is not None:
        data["removed_cycles"] = flowgraph._jsonable(list(reduced.removed_cycles))
        data["removed_edges"] = len(reduced.removed_edges)
    return data


def cmd_flowgraph(args, out, err) -> None:
    vt = taut.veering_from_entry(args.entry)
    G = flowgraph.build_flow_graph(vt)
    red = flowgraph.reduce(G) if args.reduced else None
    if args.format == "dot":
        out.write(flowgraph.to_dot(red.graph if red else G, "flow"))
    else:
        _emit(_flow_payload(G, red), args.format, out)


def cmd_cusps(args, out, err) -> None:
    vt = taut.veering_from_entry(args.entry)
    _emit(branched.report(vt), args.format, out)


def cmd_montesinos(args, out, err) -> None:
    _emit(montesinos.summary(args.p), args.format, out)


def cmd_census_match(args, out, err) -> None:
    entries, problems = census.load_census(args.census)
    for pr in problems:
        err.write(f"line {pr.line}: {pr.message}\n")
    rep = census.match(
        args.p,
        entries,
        args.h1_rank,
        allow_doubled=args.allow_doubled,
        allow_triangles=args.allow_triangles,
    )
    data = rep.to_json()
    data["malformed"] = [{"line": pr.line, "message": pr.message} for pr in problems]
    _emit(data, args.format, out)


def _half_curve(text: str | None) -> set[int] | None:
    return None if text is None else set(_int_list(text))


def cmd_geodesic(args, out, err) -> None:
    F = fatgraph.load_fatgraph(args.fatgraph)
    err.write(PARALLEL_WARNING + "\n")
    MG = markov.build_markov_graph(F)
    half = _half_curve(args.half)
    if half is not None:
        MG = markov.restrict_to_half(MG, half, args.keep_region)
    red = markov.reduce_markov(MG) if args.reduced else None
    if args.format == "dot":
        out.write(markov.to_dot(MG, red))
    else:
        _emit(markov.to_json(MG, red), args.format, out)


def cmd_cycles(args, out, err) -> None:
    if args.fatgraph:
        if args.entry:
            raise ValueError("give either an entry or --fatgraph, not both")
        G = markov.build_markov_graph(fatgraph.load_fatgraph(args.fatgraph)).graph
    elif args.entry:
        G = flowgraph.build_flow_graph(taut.veering_from_entry(args.entry))
    else:
        raise ValueError("need an entry or --fatgraph")
    cycles = flowgraph.enumerate_cycles(G, args.max_len)
    counts: dict[int, int] = {}
    for c in cycles:
        counts[c.length] = counts.get(c.length, 0) + 1
    _emit(
        {
            "max_len": args.max_len,
            "count": len(cycles),
            "by_length": {str(k): v for k, v in sorted(counts.items())},
            "cycles": [flowgraph._jsonable(list(c.vertices)) for c in cycles],
        },
        args.format,
        out,
    )


def cmd_hexagons(args, out, err) -> None:
    pants = fatgraph.dumbbell_pants() if args.pants == "dumbbell" else None
    if pants is not None and args.genus != 2:
        raise ValueError("the dumbbell pants graph has genus 2")
    F = fatgraph.hexagon_decomposition(args.genus, pants)
    _emit(F.to_json(), "json", out)


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="veerflow", description="Veering triangulations, flow graphs and Markov graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, formats=("json", "text")):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--format", choices=formats, default=_default_format(formats))
        return p

    p = add("validate", "Check that an <isosig>_<digits> entry is taut, transverse taut and veering; JSON diagnostics.")
    p.add_argument("entry")
    p.set_defaults(func=cmd_validate)

    p = add("flowgraph", "Flow graph of a veering entry: one vertex per edge, three edges per tetrahedron.", ("json", "dot", "text"))
    p.add_argument("entry")
    p.add_argument("--reduced", action="store_true", help="remove out-degree-one cycles and their entering edges")
    p.set_defaults(func=cmd_flowgraph)

    p = add("cusps", "Triple points, branch components and ladderpole counts per end of a veering entry.")
    p.add_argument("entry")
    p.set_defaults(func=cmd_cusps)

    p = add("montesinos", "Predicted tetrahedron and edge-colour counts for the cone orders p.")
    p.add_argument("--p", type=_int_list, required=True, help="cone orders, e.g. 2,3,7")
    p.set_defaults(func=cmd_montesinos)

    p = add("census-match", "Filter a census against the counts predicted for p.")
    p.add_argument("--census", required=True, help="census file, or - for stdin")
    p.add_argument("--p", type=_int_list, required=True)
    p.add_argument("--h1-rank", type=int, required=True, help="expected rank of the free first homology")
    p.add_argument("--allow-doubled", action="store_true", help="keep candidates with a doubled dual edge")
    p.add_argument("--allow-triangles", action="store_true", help="keep candidates whose dual graph has triangles")
    p.set_defaults(func=cmd_census_match)

    p = add("geodesic", "Markov graph of the geodesic flow from a four-valent fatgraph.", ("json", "dot", "text"))
    p.add_argument("--fatgraph", required=True)
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--half", metavar="EDGE-SET", help="comma-separated fatgraph edge ids of a separating doubling curve")
    p.add_argument("--keep-region", type=int, default=0, help="region on the side to keep (with --half)")
    p.set_defaults(func=cmd_geodesic)

    p = add("cycles", "Elementary cycles up to a length bound, of a flow graph or a Markov graph.")
    p.add_argument("entry", nargs="?")
    p.add_argument("--fatgraph")
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("hexagons", help="Fatgraph JSON of a right-angled hexagon decomposition of a closed surface.")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--pants", choices=("necklace", "dumbbell"), default="necklace")
    p.set_defaults(func=cmd_hexagons)
    return ap


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out, err)
    except ValidationFailure:
        return 1
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
