// Demo entry point: joins the session client, render model, and view.
// Load a graph JSON file (or the built-in sample), then orbit with the
// mouse, shift-drag an axis into the cloud to brush, and drag the range
// sliders to filter.

import * as THREE from 'three';
import { SessionClient, fetchTransport, webSocketStream } from './client';
import { buildRenderModel } from './renderModel';
import type { Snapshot } from './protocol';
import { ExplorerView } from './view';

const SAMPLE_GRAPH = {
  dimensions: ['alpha', 'beta', 'gamma'],
  nodes: [
    { id: 'a0', features: [0.9, 0.1, 0.05] },
    { id: 'a1', features: [0.8, 0.15, 0.1] },
    { id: 'a2', features: [0.95, 0.05, 0.15] },
    { id: 'b0', features: [0.1, 0.85, 0.1] },
    { id: 'b1', features: [0.2, 0.9, 0.05] },
    { id: 'b2', features: [0.05, 0.75, 0.2] },
    { id: 'c0', features: [0.15, 0.1, 0.9] },
    { id: 'c1', features: [0.05, 0.2, 0.8] },
    { id: 'c2', features: [0.1, 0.05, 0.95] },
  ],
  edges: [[0, 1], [0, 2], [1, 2], [3, 4], [3, 5], [4, 5], [6, 7], [6, 8], [7, 8], [2, 3], [5, 6]],
};

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found as T;
}

async function start(): Promise<void> {
  const canvas = el<HTMLCanvasElement>('scene');
  const serverUrl =
    new URLSearchParams(location.search).get('server') ?? 'http://127.0.0.1:8000';

  const view = new ExplorerView({
    canvas,
    width: canvas.clientWidth || 900,
    height: canvas.clientHeight || 600,
  });
  view.attachOrbit(canvas);

  const client = new SessionClient(fetchTransport(serverUrl), webSocketStream(serverUrl));
  client.onChange = (snapshot) => {
    view.update(buildRenderModel(snapshot));
    renderPanel(snapshot, client);
  };

  el<HTMLButtonElement>('load-sample').onclick = () => {
    void client.create(SAMPLE_GRAPH);
  };
  el<HTMLInputElement>('load-file').onchange = async (event) => {
    const file = (event.target as HTMLInputElement).files?.[0];
    if (file) void client.create(JSON.parse(await file.text()));
  };

  attachAxisDrag(canvas, view, client);
}

function renderPanel(snapshot: Snapshot, client: SessionClient): void {
  const legend = el<HTMLDivElement>('legend');
  legend.innerHTML = '';
  const model = buildRenderModel(snapshot);
  for (const entry of model.legend) {
    const row = document.createElement('div');
    row.className = 'legend-row';
    row.innerHTML = `<span class="swatch" style="background:${entry.color}"></span>${entry.name}`;
    legend.appendChild(row);
  }

  const status = el<HTMLDivElement>('status');
  status.textContent =
    `revision ${snapshot.revision} | selection ${snapshot.brush.selection.length}` +
    ` | threshold ${snapshot.threshold} | bins ${snapshot.bins}`;

  const filters = el<HTMLDivElement>('filters');
  filters.innerHTML = '';
  snapshot.axes.forEach((axis, k) => {
    const row = document.createElement('div');
    row.className = 'filter-row';
    const label = document.createElement('label');
    label.textContent = snapshot.dimensions[k];
    row.appendChild(label);
    // two plain range inputs act as the lo/hi rhombus handles
    for (const handle of ['lo', 'hi'] as const) {
      const input = document.createElement('input');
      input.type = 'range';
      input.min = String(axis.min);
      input.max = String(axis.max);
      input.step = String((axis.max - axis.min) / 200 || 1);
      input.value = String(axis.filter[handle]);
      input.oninput = () => {
        const lo = handle === 'lo' ? Number(input.value) : axis.filter.lo;
        const hi = handle === 'hi' ? Number(input.value) : axis.filter.hi;
        void client.sendMutation({ type: 'set_filter', axis: k, lo, hi });
      };
      row.appendChild(input);
    }
    filters.appendChild(row);
  });
}

function attachAxisDrag(canvas: HTMLCanvasElement, view: ExplorerView, client: SessionClient): void {
  const raycaster = new THREE.Raycaster();
  raycaster.params.Line = { threshold: 0.05 };
  let dragging: number | null = null;
  const plane = new THREE.Plane();
  const hit = new THREE.Vector3();

  const pointerRay = (event: PointerEvent) => {
    const rect = canvas.getBoundingClientRect();
    const ndc = new THREE.Vector2(
      ((event.clientX - rect.left) / rect.width) * 2 - 1,
      -((event.clientY - rect.top) / rect.height) * 2 + 1,
    );
    raycaster.setFromCamera(ndc, view.camera);
  };

  canvas.addEventListener('pointerdown', (event) => {
    if (!event.shiftKey) return;
    pointerRay(event);
    const hits = raycaster.intersectObjects(view.pickables, true);
    if (hits.length === 0) return;
    let target: THREE.Object3D | null = hits[0].object;
    while (target && target.userData.dimension === undefined) target = target.parent;
    if (!target) return;
    dragging = target.userData.dimension as number;
    plane.setFromNormalAndCoplanarPoint(
      view.camera.getWorldDirection(new THREE.Vector3()),
      hits[0].point,
    );
  });

  canvas.addEventListener('pointermove', (event) => {
    if (dragging === null) return;
    pointerRay(event);
    if (!raycaster.ray.intersectPlane(plane, hit)) return;
    void client.sendMutation({
      type: 'move_axis',
      axis: dragging,
      base: [hit.x, hit.y - 0.5, hit.z], // keep the midpoint under the cursor
      direction: [0, 1, 0],
    });
  });

  canvas.addEventListener('pointerup', () => {
    dragging = null;
  });
}

void start();
