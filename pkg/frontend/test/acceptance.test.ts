// UI fidelity gate, run against recorded wire traffic from the real
// service: rendered counts track the server snapshot at every scripted
// checkpoint, brushing materializes dotted edges within one revision,
// and narrowing a filter never adds edges.

import { describe, expect, it } from 'vitest';
import { applyDelta } from '../src/protocol';
import { buildRenderModel, labelEdgeCount } from '../src/renderModel';
import { loadFixture, stepByLabel } from './helpers';

function report(name: string, detail: string): void {
  console.log(`PASS: ${name} (${detail})`);
}

describe('UI fidelity', () => {
  it('rendered node/axis/label-edge counts equal the server snapshot at 10 checkpoints', () => {
    const fixture = loadFixture();
    expect(fixture.steps.length).toBe(10);
    let view = fixture.initial;
    for (const step of fixture.steps) {
      view = applyDelta(view, step.message); // the client-maintained state...
      expect(view).toEqual(step.snapshot); // ...is exactly the server state
      const model = buildRenderModel(view);
      expect(model.nodes.length).toBe(step.snapshot.node_ids.length);
      expect(model.axes.length).toBe(step.snapshot.dimensions.length);
      expect(model.labelEdges.length).toBe(labelEdgeCount(step.snapshot));
    }
    report('checkpoint fidelity', '10/10 checkpoints, counts identical');
  });

  it('dragging an axis inside the threshold shows dotted edges within one revision', () => {
    const fixture = loadFixture();
    const outside = stepByLabel(fixture, 'drag-axis0-outside');
    const inside = stepByLabel(fixture, 'drag-axis0-inside');
    expect(inside.snapshot.revision).toBe(outside.snapshot.revision + 1);

    const before = buildRenderModel(outside.snapshot);
    const after = buildRenderModel(inside.snapshot);
    expect(before.labelEdges.length).toBe(0);
    expect(after.labelEdges.length).toBeGreaterThan(0);
    expect(after.axes[0].active).toBe(true);
    report('brush latency', `0 -> ${after.labelEdges.length} dotted edges in one revision`);
  });

  it('narrowing a filter handle never increases the rendered edge count', () => {
    const fixture = loadFixture();
    const counts = ['drag-axis0-inside', 'narrow-1', 'narrow-2', 'narrow-3'].map(
      (label) => buildRenderModel(stepByLabel(fixture, label).snapshot).labelEdges.length,
    );
    for (let i = 1; i < counts.length; i += 1) {
      expect(counts[i]).toBeLessThanOrEqual(counts[i - 1]);
    }
    report('filter monotonicity', `edge counts ${counts.join(' -> ')}`);
  });
});
