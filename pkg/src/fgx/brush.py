"""Brushing: label-edges between a close-enough axis and the graph.

An axis brushes when its segment midpoint comes within a threshold of
some node. Brushing draws one dotted label-edge per node passing the
axis's range filter, attached at the node's value position on the axis;
several active axes compose by intersecting their filtered node sets.
Everything here is pure, so per-axis work can run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .axes import LabelAxis, axis_parameter, axis_point
from .graph import FeatureGraph
from .layout import LayoutScene, dominant_dimension

DEFAULT_THRESHOLD = 0.25
LABEL_EDGE_STYLE = "dotted"


@dataclass(frozen=True)
class LabelEdge:
    node: int
    axis: int
    t: float
    attachment_point: tuple[float, float, float]
    style: str = LABEL_EDGE_STYLE


@dataclass(frozen=True)
class BrushResult:
    """Per-axis brush state plus the combined node selection."""

    active: tuple[bool, ...]
    edges: tuple[tuple[LabelEdge, ...], ...]
    selection: frozenset[int]


def axis_midpoint(axis: LabelAxis) -> tuple[float, float, float]:
    return axis_point(axis, 0.5)


def is_brush_active(scene: LayoutScene, axis: LabelAxis, threshold: float) -> bool:
    """Active iff the axis midpoint is within threshold of the nearest node."""
    if threshold <= 0:
        raise ValueError(f"threshold must be > 0, got {threshold}")
    mid = np.array(axis_midpoint(axis))
    nearest = float(np.linalg.norm(scene.positions - mid, axis=1).min())
    return nearest <= threshold


def filtered_nodes(graph: FeatureGraph, axis: LabelAxis) -> set[int]:
    """Nodes whose value on the axis dimension lies inside the filter, inclusive."""
    lo, hi = axis.filter.lo, axis.filter.hi
    return {
        i for i, node in enumerate(graph.nodes)
        if lo <= node.features[axis.dimension] <= hi
    }


def label_edges(graph: FeatureGraph, axis: LabelAxis, nodes: Iterable[int]) -> list[LabelEdge]:
    out = []
    for i in sorted(nodes):
        t = axis_parameter(axis, graph.nodes[i].features[axis.dimension])
        out.append(LabelEdge(node=i, axis=axis.dimension, t=t,
                             attachment_point=axis_point(axis, t)))
    return out


def compute_brush(scene: LayoutScene, axis: LabelAxis, graph: FeatureGraph,
                  threshold: float = DEFAULT_THRESHOLD) -> list[LabelEdge]:
    """Label-edges for one axis: empty when inactive, else one per filtered node."""
    if not is_brush_active(scene, axis, threshold):
        return []
    return label_edges(graph, axis, filtered_nodes(graph, axis))


def combine_brushes(per_axis: Iterable[tuple[LabelAxis, set[int], bool]]) -> set[int]:
    """Intersection of the filtered sets over active axes; empty when none active."""
    combined: set[int] | None = None
    for _axis, nodes, active in per_axis:
        if not active:
            continue
        combined = set(nodes) if combined is None else combined & nodes
    return combined if combined is not None else set()


def build_brush_result(scene: LayoutScene, axes: Sequence[LabelAxis],
                       graph: FeatureGraph,
                       threshold: float = DEFAULT_THRESHOLD) -> BrushResult:
    """Brush state across all axes at once.

    Each active axis draws edges for the combined selection, so multi-axis
    brushing narrows every visible bundle to the nodes passing all filters.
    """
    active = tuple(is_brush_active(scene, axis, threshold) for axis in axes)
    per_axis = [
        (axis, filtered_nodes(graph, axis) if active[k] else set(), active[k])
        for k, axis in enumerate(axes)
    ]
    selection = combine_brushes(per_axis)
    edges = tuple(
        tuple(label_edges(graph, axis, selection)) if active[k] else ()
        for k, axis in enumerate(axes)
    )
    return BrushResult(active=active, edges=edges, selection=frozenset(selection))


@dataclass(frozen=True)
class CorrelationReport:
    """How a selection distributes over dimensions: dominant counts and means."""

    dimension: int
    size: int
    dominant_counts: tuple[int, ...]
    means: tuple[float, ...]


def correlation_report(graph: FeatureGraph, k: int, selection: Iterable[int]) -> CorrelationReport:
    """Per-dimension dominant-dimension counts and mean values over a selection."""
    nodes = sorted(set(selection))
    if not nodes:
        raise ValueError("correlation report needs a nonempty selection")
    counts = [0] * graph.m
    sums = [0.0] * graph.m
    for i in nodes:
        feats = graph.nodes[i].features
        dom = dominant_dimension(feats)
        if dom is not None:
            counts[dom] += 1
        for d in range(graph.m):
            sums[d] += feats[d]
    return CorrelationReport(
        dimension=k,
        size=len(nodes),
        dominant_counts=tuple(counts),
        means=tuple(s / len(nodes) for s in sums),
    )


def brush_result_to_dict(result: BrushResult) -> dict:
    """Wire form: per-axis {axis, active, edges}, plus the combined selection."""
    return {
        "axes": [
            {
                "axis": k,
                "active": result.active[k],
                "edges": [
                    {
                        "node": e.node,
                        "t": e.t,
                        "point": [float(v) for v in e.attachment_point],
                    }
                    for e in result.edges[k]
                ],
            }
            for k in range(len(result.active))
        ],
        "selection": sorted(result.selection),
    }
