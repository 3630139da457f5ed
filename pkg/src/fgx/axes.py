"""Label-axes: one 3D segment per feature dimension.

An axis is anchored at the dimension's observed minimum (lower end) and
maximum (upper end), carries a histogram of the n values, and holds a
two-handle range filter. Axes are immutable value objects; every
operation returns a new one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .graph import FeatureGraph

DEFAULT_BINS = 16
AXIS_LENGTH = 1.0
DEFAULT_BASE = (1.5, -0.5, 0.0)
DEFAULT_DIRECTION = (0.0, 1.0, 0.0)

# Initial per-dimension placement: axes line up along +x outside the unit
# layout sphere, so nothing is brushing until the analyst moves one in.
STANDOFF_X = 1.5
STANDOFF_STEP = 0.4


@dataclass(frozen=True)
class FilterRange:
    lo: float
    hi: float


@dataclass(frozen=True)
class LabelAxis:
    dimension: int
    min_value: float
    max_value: float
    histogram: tuple[int, ...]
    base: tuple[float, float, float]
    direction: tuple[float, float, float]
    length: float
    filter: FilterRange


def _unit(direction) -> tuple[float, float, float]:
    x, y, z = (float(v) for v in direction)
    norm = math.sqrt(x * x + y * y + z * z)
    if norm == 0.0:
        raise ValueError("axis direction must be nonzero")
    return (x / norm, y / norm, z / norm)


def compute_histogram(values, min_value: float, max_value: float, bins: int) -> tuple[int, ...]:
    """Bin counts over [min, max]; the max value lands in the last bin."""
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    counts = [0] * bins
    if max_value == min_value:
        counts[0] = len(values)
        return tuple(counts)
    span = max_value - min_value
    for v in values:
        b = math.floor((v - min_value) / span * bins)
        counts[max(0, min(bins - 1, b))] += 1
    return tuple(counts)


def standoff_base(k: int) -> tuple[float, float, float]:
    return (STANDOFF_X + STANDOFF_STEP * k, -0.5, 0.0)


def build_axis(graph: FeatureGraph, k: int, bins: int = DEFAULT_BINS,
               base: tuple[float, float, float] = DEFAULT_BASE,
               direction: tuple[float, float, float] = DEFAULT_DIRECTION,
               length: float = AXIS_LENGTH) -> LabelAxis:
    """Axis for dimension k: observed min/max anchors, histogram, full-range filter."""
    if not 0 <= k < graph.m:
        raise ValueError(f"dimension {k} out of range [0, {graph.m})")
    values = graph.dimension_values(k)
    lo = min(values)
    hi = max(values)
    return LabelAxis(
        dimension=k,
        min_value=lo,
        max_value=hi,
        histogram=compute_histogram(values, lo, hi, bins),
        base=tuple(float(v) for v in base),
        direction=_unit(direction),
        length=float(length),
        filter=FilterRange(lo, hi),
    )


def axis_parameter(axis: LabelAxis, v: float) -> float:
    """Map a value to its position parameter t in [0, 1] along the axis."""
    if not axis.min_value <= v <= axis.max_value:
        raise ValueError(
            f"value {v} outside axis range [{axis.min_value}, {axis.max_value}]")
    if axis.max_value == axis.min_value:
        return 0.5
    return (v - axis.min_value) / (axis.max_value - axis.min_value)


def axis_point(axis: LabelAxis, t: float) -> tuple[float, float, float]:
    """3D point at parameter t: base + t * length * direction."""
    return tuple(axis.base[c] + t * axis.length * axis.direction[c] for c in range(3))


def set_filter(axis: LabelAxis, lo: float, hi: float) -> LabelAxis:
    """Clamp both handles into the value range, swapping if they crossed."""
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError(f"filter bounds must be finite, got ({lo}, {hi})")
    lo = max(axis.min_value, min(axis.max_value, float(lo)))
    hi = max(axis.min_value, min(axis.max_value, float(hi)))
    if lo > hi:
        lo, hi = hi, lo
    return replace(axis, filter=FilterRange(lo, hi))


def move_axis(axis: LabelAxis, base, direction) -> LabelAxis:
    """Instantaneous placement; value range, histogram, and filter are untouched."""
    return replace(axis, base=tuple(float(v) for v in base), direction=_unit(direction))


def axis_to_dict(axis: LabelAxis) -> dict:
    return {
        "dimension": axis.dimension,
        "min": axis.min_value,
        "max": axis.max_value,
        "histogram": list(axis.histogram),
        "base": list(axis.base),
        "direction": list(axis.direction),
        "length": axis.length,
        "filter": {"lo": axis.filter.lo, "hi": axis.filter.hi},
    }
