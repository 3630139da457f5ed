"""One analyst's exploration session.

Holds the mutable state (axis poses, filters, proximity threshold, bin
count) behind a small mutation vocabulary. Every accepted mutation bumps
the revision by one and yields a delta that, applied to the previous
snapshot, reconstructs the new one exactly. The full mutation log plus
the originating document and config replay to byte-identical snapshots.
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Union

from .axes import (
    DEFAULT_BINS,
    LabelAxis,
    axis_to_dict,
    build_axis,
    compute_histogram,
    move_axis,
    set_filter,
    standoff_base,
)
from .brush import DEFAULT_THRESHOLD, BrushResult, brush_result_to_dict, build_brush_result
from .graph import FeatureGraph, parse_graph
from .layout import build_scene, scene_to_dict


@dataclass(frozen=True)
class SessionConfig:
    seed: int = 0
    bins: int = DEFAULT_BINS
    threshold: float = DEFAULT_THRESHOLD

    @classmethod
    def from_dict(cls, data: dict | None) -> "SessionConfig":
        data = data or {}
        unknown = set(data) - {"seed", "bins", "threshold"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(
            seed=int(data.get("seed", 0)),
            bins=int(data.get("bins", DEFAULT_BINS)),
            threshold=float(data.get("threshold", DEFAULT_THRESHOLD)),
        )
        if cfg.bins < 1:
            raise ValueError(f"bins must be >= 1, got {cfg.bins}")
        if not (math.isfinite(cfg.threshold) and cfg.threshold > 0):
            raise ValueError(f"threshold must be > 0, got {cfg.threshold}")
        return cfg

    def to_dict(self) -> dict:
        return {"seed": self.seed, "bins": self.bins, "threshold": self.threshold}


@dataclass(frozen=True)
class MoveAxis:
    axis: int
    base: tuple[float, float, float]
    direction: tuple[float, float, float]


@dataclass(frozen=True)
class SetFilter:
    axis: int
    lo: float
    hi: float


@dataclass(frozen=True)
class SetThreshold:
    value: float


@dataclass(frozen=True)
class SetBins:
    value: int


Mutation = Union[MoveAxis, SetFilter, SetThreshold, SetBins]


def _vec3(raw, what: str) -> tuple[float, float, float]:
    if not isinstance(raw, (list, tuple)) or len(raw) != 3:
        raise ValueError(f"malformed payload: {what} must be [x, y, z]")
    return tuple(float(v) for v in raw)


def mutation_from_dict(data: dict) -> Mutation:
    if not isinstance(data, dict) or "type" not in data:
        raise ValueError("malformed payload: mutation needs a 'type'")
    kind = data["type"]
    try:
        if kind == "move_axis":
            return MoveAxis(axis=int(data["axis"]),
                            base=_vec3(data["base"], "base"),
                            direction=_vec3(data["direction"], "direction"))
        if kind == "set_filter":
            return SetFilter(axis=int(data["axis"]),
                             lo=float(data["lo"]), hi=float(data["hi"]))
        if kind == "set_threshold":
            return SetThreshold(value=float(data["value"]))
        if kind == "set_bins":
            return SetBins(value=int(data["value"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed payload for {kind!r}: {exc}") from exc
    raise ValueError(f"unknown mutation type {kind!r}")


def mutation_to_dict(mutation: Mutation) -> dict:
    if isinstance(mutation, MoveAxis):
        return {"type": "move_axis", "axis": mutation.axis,
                "base": list(mutation.base), "direction": list(mutation.direction)}
    if isinstance(mutation, SetFilter):
        return {"type": "set_filter", "axis": mutation.axis,
                "lo": mutation.lo, "hi": mutation.hi}
    if isinstance(mutation, SetThreshold):
        return {"type": "set_threshold", "value": mutation.value}
    if isinstance(mutation, SetBins):
        return {"type": "set_bins", "value": mutation.value}
    raise TypeError(f"not a mutation: {mutation!r}")


def canonical_json(obj) -> str:
    """Stable byte-for-byte encoding used for snapshot comparison and the wire."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def apply_delta(snapshot: dict, message: dict) -> dict:
    """Client-side merge: prior snapshot + one stream message -> next snapshot."""
    snap = copy.deepcopy(snapshot)
    snap["revision"] = message["revision"]
    delta = message["delta"]
    for key in ("threshold", "bins"):
        if key in delta:
            snap[key] = delta[key]
    for k, axis in delta.get("axes", {}).items():
        snap["axes"][int(k)] = axis
    brush = delta.get("brush", {})
    for k, entry in brush.get("axes", {}).items():
        snap["brush"]["axes"][int(k)] = entry
    if "selection" in brush:
        snap["brush"]["selection"] = brush["selection"]
    return snap


class Session:
    """Single-writer exploration state; reads always see one whole revision."""

    def __init__(self, document: str, config: SessionConfig | dict | None = None):
        if not isinstance(config, SessionConfig):
            config = SessionConfig.from_dict(config)
        self.config = config
        self.graph: FeatureGraph = parse_graph(document)
        self.scene = build_scene(self.graph, config.seed)
        self.threshold = config.threshold
        self.bins = config.bins
        self.axes: list[LabelAxis] = [
            build_axis(self.graph, k, config.bins, base=standoff_base(k))
            for k in range(self.graph.m)
        ]
        self.revision = 0
        self._document = document
        self._log: list[dict] = []
        self._scene_dict = scene_to_dict(self.graph, self.scene)
        self._snapshot = self._build_snapshot()

    # -- reads ---------------------------------------------------------------

    def snapshot(self) -> dict:
        """Current state as a JSON-ready dict; treat as read-only."""
        return self._snapshot

    def brush_result(self) -> BrushResult:
        return build_brush_result(self.scene, self.axes, self.graph, self.threshold)

    def brush_dict(self) -> dict:
        return self._snapshot["brush"]

    def mutation_log(self) -> list[dict]:
        return [copy.deepcopy(m) for m in self._log]

    # -- writes --------------------------------------------------------------

    def apply(self, mutation: Mutation | dict) -> dict:
        """Apply one mutation; returns the stream message {revision, delta}."""
        if isinstance(mutation, dict):
            mutation = mutation_from_dict(mutation)

        if isinstance(mutation, (MoveAxis, SetFilter)):
            if not 0 <= mutation.axis < self.graph.m:
                raise ValueError(f"unknown dimension {mutation.axis}")

        if isinstance(mutation, MoveAxis):
            k = mutation.axis
            self.axes[k] = move_axis(self.axes[k], mutation.base, mutation.direction)
        elif isinstance(mutation, SetFilter):
            k = mutation.axis
            self.axes[k] = set_filter(self.axes[k], mutation.lo, mutation.hi)
        elif isinstance(mutation, SetThreshold):
            if not (math.isfinite(mutation.value) and mutation.value > 0):
                raise ValueError(f"threshold must be > 0, got {mutation.value}")
            self.threshold = mutation.value
        elif isinstance(mutation, SetBins):
            if mutation.value < 1:
                raise ValueError(f"bins must be >= 1, got {mutation.value}")
            self.bins = mutation.value
            for k, axis in enumerate(self.axes):
                values = self.graph.dimension_values(k)
                hist = compute_histogram(values, axis.min_value, axis.max_value, self.bins)
                self.axes[k] = replace(axis, histogram=hist)
        else:
            raise TypeError(f"not a mutation: {mutation!r}")

        self.revision += 1
        self._log.append(mutation_to_dict(mutation))
        previous = self._snapshot
        self._snapshot = self._build_snapshot()
        return {"revision": self.revision, "delta": _diff(previous, self._snapshot)}

    # -- log persistence -----------------------------------------------------

    def save_log(self, path: str | Path) -> None:
        """Write document + config + mutation log; replay_log restores the session."""
        record = {
            "document": json.loads(self._document),
            "config": self.config.to_dict(),
            "mutations": self._log,
        }
        Path(path).write_text(json.dumps(record, indent=2, sort_keys=True))

    @classmethod
    def replay_log(cls, path: str | Path) -> "Session":
        record = json.loads(Path(path).read_text())
        session = cls(json.dumps(record["document"]), record.get("config"))
        for mutation in record.get("mutations", []):
            session.apply(mutation)
        return session

    # -- internals -------------------------------------------------------------

    def _build_snapshot(self) -> dict:
        return {
            "revision": self.revision,
            "dimensions": list(self.graph.dimension_names),
            "node_ids": [node.id for node in self.graph.nodes],
            "scene": self._scene_dict,
            "axes": [axis_to_dict(axis) for axis in self.axes],
            "threshold": self.threshold,
            "bins": self.bins,
            "brush": brush_result_to_dict(self.brush_result()),
        }


def _diff(old: dict, new: dict) -> dict:
    delta: dict = {}
    axes = {
        str(k): new["axes"][k]
        for k in range(len(new["axes"]))
        if new["axes"][k] != old["axes"][k]
    }
    if axes:
        delta["axes"] = axes
    brush: dict = {}
    brush_axes = {
        str(k): new["brush"]["axes"][k]
        for k in range(len(new["brush"]["axes"]))
        if new["brush"]["axes"][k] != old["brush"]["axes"][k]
    }
    if brush_axes:
        brush["axes"] = brush_axes
    if new["brush"]["selection"] != old["brush"]["selection"]:
        brush["selection"] = new["brush"]["selection"]
    if brush:
        delta["brush"] = brush
    for key in ("threshold", "bins"):
        if new[key] != old[key]:
            delta[key] = new[key]
    return delta
