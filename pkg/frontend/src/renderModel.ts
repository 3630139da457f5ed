// Snapshot -> drawable primitives. Everything the view puts on screen is
// derived here first, as plain data, so tests can count and measure it
// without a WebGL context.

import type { AxisState, Snapshot, Vec3 } from './protocol';

export const NONE_COLOR = '#808080';
export const ACTIVE_AXIS_COLOR = '#FFD43B';
export const IDLE_AXIS_COLOR = '#CED4DA';

export interface NodeSprite {
  index: number;
  id: string;
  position: Vec3;
  color: string;
  selected: boolean;
}

export interface GradientSegment {
  from: Vec3;
  to: Vec3;
  fromColor: string;
  toColor: string;
}

export interface HistogramBar {
  center: Vec3;
  /** bar size as a fraction of the tallest bin, in (0, 1] */
  fraction: number;
  count: number;
}

export interface AxisModel {
  dimension: number;
  name: string;
  start: Vec3;
  end: Vec3;
  active: boolean;
  color: string;
  bars: HistogramBar[];
  /** rhombus handle positions for the filter's lo/hi values */
  handleLo: Vec3;
  handleHi: Vec3;
  filterParams: { lo: number; hi: number };
}

export interface LabelEdgeSegment {
  axis: number;
  node: number;
  from: Vec3;
  to: Vec3;
}

export interface LegendEntry {
  name: string;
  color: string;
}

export interface RenderModel {
  nodes: NodeSprite[];
  graphEdges: GradientSegment[];
  axes: AxisModel[];
  /** drawn dotted by the view */
  labelEdges: LabelEdgeSegment[];
  legend: LegendEntry[];
  selection: Set<number>;
}

function colorFor(index: number, palette: string[]): string {
  return index >= 0 && index < palette.length ? palette[index] : NONE_COLOR;
}

function pointAt(axis: AxisState, t: number): Vec3 {
  return [
    axis.base[0] + t * axis.length * axis.direction[0],
    axis.base[1] + t * axis.length * axis.direction[1],
    axis.base[2] + t * axis.length * axis.direction[2],
  ];
}

/** Value -> parameter along the axis; a degenerate value range centers. */
export function axisParameter(axis: AxisState, value: number): number {
  if (axis.max === axis.min) return 0.5;
  return (value - axis.min) / (axis.max - axis.min);
}

function buildAxisModel(axis: AxisState, name: string, active: boolean): AxisModel {
  const maxCount = Math.max(1, ...axis.histogram);
  const bins = axis.histogram.length;
  const bars: HistogramBar[] = axis.histogram.map((count, i) => ({
    center: pointAt(axis, (i + 0.5) / bins),
    fraction: count / maxCount,
    count,
  }));
  return {
    dimension: axis.dimension,
    name,
    start: pointAt(axis, 0),
    end: pointAt(axis, 1),
    active,
    color: active ? ACTIVE_AXIS_COLOR : IDLE_AXIS_COLOR,
    bars,
    handleLo: pointAt(axis, axisParameter(axis, axis.filter.lo)),
    handleHi: pointAt(axis, axisParameter(axis, axis.filter.hi)),
    filterParams: {
      lo: axisParameter(axis, axis.filter.lo),
      hi: axisParameter(axis, axis.filter.hi),
    },
  };
}

export function buildRenderModel(snapshot: Snapshot): RenderModel {
  const { scene, brush } = snapshot;
  const selection = new Set(brush.selection);

  const nodes: NodeSprite[] = snapshot.node_ids.map((id, i) => ({
    index: i,
    id,
    position: scene.positions[i],
    color: colorFor(scene.colors[i], scene.palette),
    selected: selection.has(i),
  }));

  const graphEdges: GradientSegment[] = scene.edges.map((edge) => ({
    from: scene.positions[edge.nodes[0]],
    to: scene.positions[edge.nodes[1]],
    fromColor: colorFor(edge.gradient[0], scene.palette),
    toColor: colorFor(edge.gradient[1], scene.palette),
  }));

  const axes: AxisModel[] = snapshot.axes.map((axis, k) =>
    buildAxisModel(axis, snapshot.dimensions[k], brush.axes[k]?.active ?? false),
  );

  const labelEdges: LabelEdgeSegment[] = [];
  for (const entry of brush.axes) {
    for (const edge of entry.edges) {
      labelEdges.push({
        axis: entry.axis,
        node: edge.node,
        from: scene.positions[edge.node],
        to: edge.point,
      });
    }
  }

  const legend: LegendEntry[] = snapshot.dimensions.map((name, k) => ({
    name,
    color: colorFor(k, scene.palette),
  }));

  return { nodes, graphEdges, axes, labelEdges, legend, selection };
}

/** Total dotted label-edge count a snapshot asks the view to draw. */
export function labelEdgeCount(snapshot: Snapshot): number {
  return snapshot.brush.axes.reduce((sum, entry) => sum + entry.edges.length, 0);
}
