// Wire types for the scene service, plus the client-side delta merge.
// Shapes follow the server's snapshot schema exactly; every field name
// here is a field name on the wire.

export type Vec3 = [number, number, number];

export interface FilterRange {
  lo: number;
  hi: number;
}

export interface AxisState {
  dimension: number;
  min: number;
  max: number;
  histogram: number[];
  base: Vec3;
  direction: Vec3;
  length: number;
  filter: FilterRange;
}

export interface LabelEdgeWire {
  node: number;
  t: number;
  point: Vec3;
}

export interface BrushAxisState {
  axis: number;
  active: boolean;
  edges: LabelEdgeWire[];
}

export interface BrushState {
  axes: BrushAxisState[];
  selection: number[];
}

export interface SceneEdge {
  nodes: [number, number];
  gradient: [number, number];
}

export interface SceneState {
  positions: Vec3[];
  colors: number[];
  palette: string[];
  edges: SceneEdge[];
}

export interface Snapshot {
  revision: number;
  dimensions: string[];
  node_ids: string[];
  scene: SceneState;
  axes: AxisState[];
  threshold: number;
  bins: number;
  brush: BrushState;
}

export interface Delta {
  axes?: Record<string, AxisState>;
  brush?: { axes?: Record<string, BrushAxisState>; selection?: number[] };
  threshold?: number;
  bins?: number;
}

export interface StreamMessage {
  revision: number;
  delta: Delta;
}

export type Mutation =
  | { type: 'move_axis'; axis: number; base: number[]; direction: number[] }
  | { type: 'set_filter'; axis: number; lo: number; hi: number }
  | { type: 'set_threshold'; value: number }
  | { type: 'set_bins'; value: number };

/**
 * Merge one stream message into a snapshot, returning a new snapshot.
 * Neither input is mutated. Deltas are keyed the way the server sends
 * them: axis maps use string keys, scalars replace wholesale.
 */
export function applyDelta(snapshot: Snapshot, message: StreamMessage): Snapshot {
  const next: Snapshot = structuredClone(snapshot);
  const delta: Delta = structuredClone(message.delta);
  next.revision = message.revision;
  if (delta.threshold !== undefined) next.threshold = delta.threshold;
  if (delta.bins !== undefined) next.bins = delta.bins;
  for (const [key, axis] of Object.entries(delta.axes ?? {})) {
    next.axes[Number(key)] = axis;
  }
  const brush = delta.brush ?? {};
  for (const [key, entry] of Object.entries(brush.axes ?? {})) {
    next.brush.axes[Number(key)] = entry;
  }
  if (brush.selection !== undefined) next.brush.selection = brush.selection;
  return next;
}

/** A delta only applies cleanly on top of the revision just before it. */
export function isNextRevision(snapshot: Snapshot, message: StreamMessage): boolean {
  return message.revision === snapshot.revision + 1;
}
