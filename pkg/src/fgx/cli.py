"""fgx command line: generate | layout | brush | serve.

Standard output carries machine-readable JSON only; diagnostics go to
standard error. Exit codes: 0 success, 1 user/input error, 2 internal.
"""

from __future__ import annotations

import argparse
import json
import socket
import sys
from pathlib import Path

from .axes import DEFAULT_BINS, build_axis, move_axis, set_filter, standoff_base
from .brush import DEFAULT_THRESHOLD, brush_result_to_dict, build_brush_result
from .graph import GraphError, generate_clustered, parse_graph, serialize_graph
from .layout import build_scene, scene_to_dict


def _dump(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        print(text)
    else:
        Path(path).write_text(text + "\n")


def _read_graph(path: str):
    return parse_graph(Path(path).read_text())


def cmd_generate(args) -> int:
    graph = generate_clustered(args.nodes, args.dims, args.clusters, args.noise, args.seed)
    _write_output(serialize_graph(graph), args.output)
    return 0


def cmd_layout(args) -> int:
    graph = _read_graph(args.input)
    scene = build_scene(graph, args.seed)
    _write_output(_dump(scene_to_dict(graph, scene)), args.output)
    return 0


def _parse_range(raw: str) -> tuple[float, float]:
    try:
        lo, hi = raw.split(":")
        return float(lo), float(hi)
    except ValueError as exc:
        raise ValueError(f"invalid range {raw!r}, expected LO:HI") from exc


def _parse_base(raw: str) -> tuple[float, float, float]:
    parts = raw.split(",")
    if len(parts) != 3:
        raise ValueError(f"invalid base {raw!r}, expected X,Y,Z")
    return tuple(float(v) for v in parts)


# Default brush pose: base below the origin puts the axis midpoint at the
# layout centroid, so the queried axis is active.
BRUSH_BASE = (0.0, -0.5, 0.0)


def cmd_brush(args) -> int:
    if not args.axis:
        raise ValueError("at least one --axis K --range LO:HI pair is required")
    if len(args.axis) != len(args.range):
        raise ValueError("--axis and --range must be given in pairs")
    bases = [_parse_base(b) for b in (args.base or [])]
    if bases and len(bases) != len(args.axis):
        raise ValueError("--base must be given once per --axis, or not at all")

    graph = _read_graph(args.input)
    scene = build_scene(graph, args.seed)
    axes = [build_axis(graph, k, args.bins, base=standoff_base(k)) for k in range(graph.m)]
    for slot, k in enumerate(args.axis):
        if not 0 <= k < graph.m:
            raise ValueError(f"axis {k} out of range [0, {graph.m})")
        lo, hi = _parse_range(args.range[slot])
        base = bases[slot] if bases else BRUSH_BASE
        axes[k] = set_filter(move_axis(axes[k], base, (0.0, 1.0, 0.0)), lo, hi)

    result = build_brush_result(scene, axes, graph, args.threshold)
    print(_dump(brush_result_to_dict(result)))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.bind((args.host, args.port))
        probe.close()
    except OSError as exc:
        raise ValueError(f"cannot bind {args.host}:{args.port}: {exc}") from exc

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fgx",
                                     description="feature-graph layout and brushing")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic clustered graph")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--dims", type=int, required=True)
    p.add_argument("--clusters", type=int, required=True)
    p.add_argument("--noise", type=float, default=0.2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("layout", help="compute a 3D scene from a graph file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("brush", help="headless brushing query")
    p.add_argument("--input", required=True)
    p.add_argument("--axis", type=int, action="append", default=[])
    p.add_argument("--range", action="append", default=[],
                   help="LO:HI filter for the paired --axis")
    p.add_argument("--base", action="append", default=[],
                   help="X,Y,Z axis base for the paired --axis")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bins", type=int, default=DEFAULT_BINS)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.set_defaults(func=cmd_brush)

    p = sub.add_parser("serve", help="run the scene service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 0
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
