"""Graph data model: nodes carrying nonnegative feature vectors.

Covers the JSON file format (parse/serialize), validation, and a seeded
synthetic generator that produces clustered graphs for tests and demos.
"""

from __future__ import annotations

import json
import math
import re
import warnings
from dataclasses import dataclass

import numpy as np

from .rng import SplitMix64

_HEX_COLOR = re.compile(r"^#[0-9a-fA-F]{6}$")

# Edge generation knobs for the synthetic generator: partner draws per node
# and the probability that a draw stays inside the node's own cluster.
EDGE_ATTEMPTS = 3
INTRA_CLUSTER_PROB = 0.9


class GraphError(ValueError):
    """Malformed or invalid graph document."""


class GraphWarning(UserWarning):
    """Recoverable oddity in a graph document (dropped edge, ...)."""


def _float3(value, what: str) -> tuple[float, float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise GraphError(f"{what} must have 3 components")
    out = tuple(float(v) for v in value)
    if not all(math.isfinite(v) for v in out):
        raise GraphError(f"{what} has non-finite component")
    return out


@dataclass(frozen=True)
class Node:
    """One graph node: stable external id, m feature values, optional 3D position."""

    id: str
    features: tuple[float, ...]
    position: tuple[float, float, float] | None = None

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(float(v) for v in self.features))
        for d, v in enumerate(self.features):
            if not math.isfinite(v):
                raise GraphError(f"node {self.id!r}: non-finite feature value at dimension {d}")
            if v < 0:
                raise GraphError(f"node {self.id!r}: negative feature value at dimension {d}")
        if self.position is not None:
            object.__setattr__(self, "position", _float3(self.position, f"node {self.id!r} position"))


@dataclass(frozen=True)
class FeatureGraph:
    """Undirected graph whose n nodes each carry an m-dimensional feature vector.

    Edges are normalized (lower index first), free of self-loops and
    duplicates. Instances are immutable and safe to share across threads.
    """

    dimension_names: tuple[str, ...]
    nodes: tuple[Node, ...]
    edges: tuple[tuple[int, int], ...]
    colors: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "dimension_names", tuple(str(s) for s in self.dimension_names))
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple((int(i), int(j)) for i, j in self.edges))
        if self.colors is not None:
            object.__setattr__(self, "colors", tuple(str(c) for c in self.colors))

        if self.m == 0:
            raise GraphError("graph has no dimensions (m = 0)")
        if self.n == 0:
            raise GraphError("graph has no nodes (n = 0)")
        for node in self.nodes:
            if len(node.features) != self.m:
                raise GraphError(
                    f"node {node.id!r}: feature vector length {len(node.features)} != {self.m}"
                )
        seen = set()
        for i, j in self.edges:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise GraphError(f"edge index out of range: [{i}, {j}]")
            if i == j:
                raise GraphError(f"self-loop edge [{i}, {j}]")
            if i > j:
                raise GraphError(f"edge [{i}, {j}] not normalized (lower index first)")
            if (i, j) in seen:
                raise GraphError(f"duplicate edge [{i}, {j}]")
            seen.add((i, j))
        if self.colors is not None:
            if len(self.colors) != self.m:
                raise GraphError(f"colors length {len(self.colors)} != {self.m}")
            for c in self.colors:
                if not _HEX_COLOR.match(c):
                    raise GraphError(f"invalid color {c!r} (expected #RRGGBB)")

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.dimension_names)

    def feature_matrix(self) -> np.ndarray:
        """All feature vectors as an (n, m) float array."""
        return np.array([node.features for node in self.nodes], dtype=float)

    def dimension_values(self, k: int) -> tuple[float, ...]:
        """The n values of dimension k, in node order."""
        if not 0 <= k < self.m:
            raise GraphError(f"dimension {k} out of range [0, {self.m})")
        return tuple(node.features[k] for node in self.nodes)


def parse_graph(document: str) -> FeatureGraph:
    """Parse and validate a UTF-8 JSON graph document.

    Self-loops and duplicate undirected edges are dropped, one GraphWarning
    per dropped edge; everything else invalid raises GraphError.
    """
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed document: {exc}") from exc
    if not isinstance(data, dict):
        raise GraphError("malformed document: top level must be an object")

    dims = data.get("dimensions")
    if not isinstance(dims, list) or not all(isinstance(s, str) for s in dims):
        raise GraphError("malformed document: 'dimensions' must be an array of strings")

    raw_nodes = data.get("nodes")
    if not isinstance(raw_nodes, list):
        raise GraphError("malformed document: 'nodes' must be an array")
    nodes = []
    for entry in raw_nodes:
        if not isinstance(entry, dict) or "id" not in entry or "features" not in entry:
            raise GraphError("malformed document: node entries need 'id' and 'features'")
        feats = entry["features"]
        if not isinstance(feats, list) or not all(isinstance(v, (int, float)) for v in feats):
            raise GraphError(f"node {entry['id']!r}: 'features' must be an array of numbers")
        nodes.append(Node(id=str(entry["id"]), features=feats, position=entry.get("position")))

    raw_edges = data.get("edges", [])
    if not isinstance(raw_edges, list):
        raise GraphError("malformed document: 'edges' must be an array")
    n = len(nodes)
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for pair in raw_edges:
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(v, int) for v in pair)):
            raise GraphError(f"malformed document: edge {pair!r} must be an [i, j] integer pair")
        i, j = pair
        if not (0 <= i < n and 0 <= j < n):
            raise GraphError(f"edge index out of range: [{i}, {j}]")
        if i == j:
            warnings.warn(f"dropped self-loop edge [{i}, {j}]", GraphWarning, stacklevel=2)
            continue
        key = (min(i, j), max(i, j))
        if key in seen:
            warnings.warn(f"dropped duplicate edge [{i}, {j}]", GraphWarning, stacklevel=2)
            continue
        seen.add(key)
        edges.append(key)

    return FeatureGraph(
        dimension_names=dims,
        nodes=nodes,
        edges=edges,
        colors=data.get("colors"),
    )


def graph_to_dict(graph: FeatureGraph) -> dict:
    doc: dict = {
        "dimensions": list(graph.dimension_names),
        "nodes": [
            {"id": node.id, "features": list(node.features)}
            | ({"position": list(node.position)} if node.position is not None else {})
            for node in graph.nodes
        ],
        "edges": [list(e) for e in graph.edges],
    }
    if graph.colors is not None:
        doc["colors"] = list(graph.colors)
    return doc


def serialize_graph(graph: FeatureGraph) -> str:
    """Inverse of parse_graph: parse(serialize(g)) == g."""
    return json.dumps(graph_to_dict(graph), indent=2, sort_keys=True)


def generate_clustered(n: int, m: int, clusters: int, noise: float, seed: int) -> FeatureGraph:
    """Deterministic clustered graph: node i belongs to cluster i mod clusters.

    Each node's feature vector is dominated by its cluster's dimension
    (value in [0.5, 1.0)) with all other entries below `noise`; edges are
    drawn mostly within clusters. Same seed, same bytes.
    """
    if clusters < 1:
        raise ValueError(f"clusters must be >= 1, got {clusters}")
    if clusters > m:
        raise ValueError(f"clusters ({clusters}) must not exceed dimensions m ({m})")
    if n < clusters:
        raise ValueError(f"n ({n}) must be >= clusters ({clusters})")
    if not (0.0 <= noise < 1.0):
        raise ValueError(f"noise must lie in [0, 1), got {noise}")

    rng = SplitMix64(seed)
    nodes = []
    for i in range(n):
        c = i % clusters
        feats = [
            0.5 + 0.5 * rng.next_float() if d == c else noise * rng.next_float()
            for d in range(m)
        ]
        nodes.append(Node(id=f"n{i:04d}", features=feats))

    members = [list(range(c, n, clusters)) for c in range(clusters)]
    pairs: set[tuple[int, int]] = set()
    for i in range(n):
        own = members[i % clusters]
        for _ in range(EDGE_ATTEMPTS):
            if rng.next_float() < INTRA_CLUSTER_PROB and len(own) > 1:
                j = own[rng.index(len(own))]
            else:
                j = rng.index(n)
            if j != i:
                pairs.add((min(i, j), max(i, j)))

    return FeatureGraph(
        dimension_names=tuple(f"dim{d}" for d in range(m)),
        nodes=nodes,
        edges=sorted(pairs),
    )
