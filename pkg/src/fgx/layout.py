"""Similarity-driven 3D layout.

Pairwise cosine distances over the feature vectors feed a classical
(Torgerson) MDS embedding; nodes are colored by their dominant feature
dimension and edges carry the ordered pair of endpoint colors for
gradient rendering. Output coordinates are centered at the origin and
scaled to a unit bounding sphere so downstream proximity thresholds have
a known scale.
"""

from __future__ import annotations

import colorsys
from dataclasses import dataclass

import numpy as np

from .graph import FeatureGraph, GraphError

# Zero-feature nodes get no dimension color; renderers show them in this gray.
NONE_COLOR = "#808080"

# Presentation constants: node size and edge thickness are fixed, not data.
NODE_RADIUS = 0.02
EDGE_WIDTH = 1.0


def cosine_distance(a, b) -> float:
    """1 - cos(angle) between two nonnegative vectors, in [0, 1].

    Undefined for all-zero input; pinned to the maximal 1.0 instead of
    raising so sparse rows survive the pipeline.
    """
    av = np.asarray(a, dtype=float)
    bv = np.asarray(b, dtype=float)
    na = float(np.sqrt(av @ av))
    nb = float(np.sqrt(bv @ bv))
    if na == 0.0 or nb == 0.0:
        return 1.0
    d = 1.0 - float(av @ bv) / (na * nb)
    return min(1.0, max(0.0, d))


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric nonnegative n x n distances with zero diagonal."""

    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=float)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError(f"distance matrix must be square, got shape {e.shape}")
        if not np.all(np.isfinite(e)):
            raise ValueError("distance matrix has non-finite entries")
        if np.any(e < 0):
            raise ValueError("distance matrix has negative entries")
        if not np.array_equal(e, e.T):
            raise ValueError("distance matrix is not symmetric")
        if np.any(np.diagonal(e) != 0):
            raise ValueError("distance matrix diagonal must be zero")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def build_distance_matrix(graph: FeatureGraph) -> DistanceMatrix:
    """Pairwise cosine distances between all node feature vectors."""
    feats = graph.feature_matrix()
    norms = np.linalg.norm(feats, axis=1)
    zero = norms == 0.0
    safe = np.where(zero, 1.0, norms)
    d = 1.0 - (feats @ feats.T) / np.outer(safe, safe)
    d = (d + d.T) / 2.0
    d[zero, :] = 1.0
    d[:, zero] = 1.0
    np.clip(d, 0.0, 1.0, out=d)
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d)


def dominant_dimension(a) -> int | None:
    """Argmax of a nonnegative vector; ties to the lowest index, all-zero to None."""
    av = np.asarray(a, dtype=float)
    if np.all(av == 0.0):
        return None
    return int(np.argmax(av))


def center_and_normalize(positions: np.ndarray) -> np.ndarray:
    """Center at the origin and scale the farthest node to radius 1.

    Zero-spread input (single node, or all nodes coincident) stays at the
    origin since no scale exists.
    """
    pos = np.array(positions, dtype=float)
    pos -= pos.mean(axis=0)
    radius = float(np.linalg.norm(pos, axis=1).max(initial=0.0))
    if radius > 0.0:
        pos /= radius
    return pos


def _classical_mds(dm: DistanceMatrix) -> np.ndarray:
    """Torgerson MDS: double-center -1/2 J D^2 J, keep the top-3 eigenpairs."""
    n = dm.n
    d2 = dm.entries ** 2
    j = np.eye(n) - np.full((n, n), 1.0 / n)
    b = -0.5 * (j @ d2 @ j)
    evals, evecs = np.linalg.eigh(b)
    order = np.argsort(-evals, kind="stable")[: min(3, n)]
    vals = np.maximum(evals[order], 0.0)
    coords = evecs[:, order] * np.sqrt(vals)
    if coords.shape[1] < 3:
        coords = np.hstack([coords, np.zeros((n, 3 - coords.shape[1]))])

    # Eigenvector sign is arbitrary; flip each axis so its largest-magnitude
    # coordinate (lowest node index on ties) is positive.
    for c in range(3):
        col = coords[:, c]
        anchor = int(np.argmax(np.abs(col)))
        if col[anchor] < 0:
            coords[:, c] = -col
    return coords


def smacof_refine(dm: DistanceMatrix, init: np.ndarray, iterations: int,
                  eps: float = 1e-12) -> np.ndarray:
    """Stress-majorization refinement via Guttman transforms from `init`."""
    target = dm.entries
    n = dm.n
    pos = np.array(init, dtype=float)
    prev_stress = None
    for _ in range(iterations):
        diff = pos[:, None, :] - pos[None, :, :]
        dist = np.linalg.norm(diff, axis=2)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dist > 0, target / dist, 0.0)
        b = -ratio
        np.fill_diagonal(b, 0.0)
        np.fill_diagonal(b, -b.sum(axis=1))
        pos = (b @ pos) / n
        stress = float(((dist - target) ** 2).sum() / 2.0)
        if prev_stress is not None and abs(prev_stress - stress) < eps:
            break
        prev_stress = stress
    return pos


def mds_layout(dm: DistanceMatrix, seed: int, refine_iterations: int = 0) -> np.ndarray:
    """Embed a distance matrix into 3D, centered and unit-sphere normalized.

    Classical MDS is deterministic and needs no randomness; `seed` is kept
    for interface stability (the optional SMACOF refinement starts from the
    classical solution, so it is deterministic too).
    """
    if dm.n == 0:
        raise ValueError("cannot lay out an empty distance matrix")
    coords = _classical_mds(dm)
    if refine_iterations > 0:
        coords = smacof_refine(dm, coords, refine_iterations)
    return center_and_normalize(coords)


def default_palette(m: int) -> tuple[str, ...]:
    """m colors evenly spaced in hue (HSL S=70%, L=50%)."""
    out = []
    for k in range(m):
        r, g, b = colorsys.hls_to_rgb(k / m, 0.5, 0.7)
        out.append("#{:02X}{:02X}{:02X}".format(
            int(round(r * 255)), int(round(g * 255)), int(round(b * 255))))
    return tuple(out)


@dataclass(frozen=True)
class LayoutScene:
    """Laid-out graph: unit-sphere positions, dimension colors, edge gradients."""

    positions: np.ndarray                                # (n, 3)
    node_colors: tuple[int | None, ...]                  # dimension index or None
    edge_gradients: tuple[tuple[int | None, int | None], ...]
    palette: tuple[str, ...]

    def __post_init__(self):
        pos = np.array(self.positions, dtype=float)
        pos.setflags(write=False)
        object.__setattr__(self, "positions", pos)

    @property
    def n(self) -> int:
        return self.positions.shape[0]


def build_scene(graph: FeatureGraph, seed: int, refine_iterations: int = 0) -> LayoutScene:
    """Lay out a graph and assign colors.

    Precomputed node positions are honored when every node carries one
    (only centered/normalized); mixing positioned and unpositioned nodes
    is an error.
    """
    have_pos = [node.position is not None for node in graph.nodes]
    if all(have_pos):
        positions = np.array([node.position for node in graph.nodes], dtype=float)
    elif any(have_pos):
        raise GraphError("partial positions: every node needs a position, or none")
    else:
        positions = mds_layout(build_distance_matrix(graph), seed, refine_iterations)
    positions = center_and_normalize(positions)

    colors = tuple(dominant_dimension(node.features) for node in graph.nodes)
    gradients = tuple((colors[i], colors[j]) for i, j in graph.edges)
    palette = graph.colors if graph.colors is not None else default_palette(graph.m)
    return LayoutScene(positions, colors, gradients, palette)


def scene_to_dict(graph: FeatureGraph, scene: LayoutScene) -> dict:
    """Scene export: positions, color indices (-1 for none), palette, edges."""
    return {
        "positions": [[float(v) for v in row] for row in scene.positions],
        "colors": [-1 if c is None else c for c in scene.node_colors],
        "palette": list(scene.palette),
        "edges": [
            {
                "nodes": [i, j],
                "gradient": [-1 if g is None else g for g in scene.edge_gradients[e]],
            }
            for e, (i, j) in enumerate(graph.edges)
        ],
    }
