// three.js presentation of a RenderModel. The view owns the WebGL
// objects and a minimal orbit control; all scene content is rebuilt from
// the model on update, which at a few thousand primitives is cheaper
// than tracking fine-grained diffs.

import * as THREE from 'three';
import type { AxisModel, RenderModel } from './renderModel';

const NODE_RADIUS = 0.02;
const SELECTED_SCALE = 1.8;
const BAR_THICKNESS = 0.01;
const BAR_MAX_DEPTH = 0.12;
const HANDLE_SIZE = 0.025;
const DASH = { dashSize: 0.02, gapSize: 0.015 };

export interface ViewOptions {
  canvas: HTMLCanvasElement;
  width: number;
  height: number;
}

export class ExplorerView {
  readonly camera: THREE.PerspectiveCamera;
  private readonly renderer: THREE.WebGLRenderer;
  private readonly scene: THREE.Scene;
  private content: THREE.Group;
  private readonly nodeGeometry = new THREE.SphereGeometry(NODE_RADIUS, 12, 8);
  private readonly handleGeometry = new THREE.OctahedronGeometry(HANDLE_SIZE);
  private orbit = { theta: 0.6, phi: 1.1, radius: 3.2 };
  private axisPickables: THREE.Object3D[] = [];

  constructor(options: ViewOptions) {
    this.renderer = new THREE.WebGLRenderer({ canvas: options.canvas, antialias: true });
    this.renderer.setSize(options.width, options.height, false);
    this.scene = new THREE.Scene();
    this.scene.background = new THREE.Color('#101113');
    this.camera = new THREE.PerspectiveCamera(50, options.width / options.height, 0.01, 100);
    this.content = new THREE.Group();
    this.scene.add(this.content);
    this.scene.add(new THREE.AmbientLight(0xffffff, 0.9));
    const key = new THREE.DirectionalLight(0xffffff, 0.6);
    key.position.set(2, 3, 4);
    this.scene.add(key);
    this.applyOrbit();
  }

  update(model: RenderModel): void {
    this.disposeContent();
    this.content = new THREE.Group();
    this.axisPickables = [];
    this.content.add(this.buildNodes(model));
    const edges = this.buildGraphEdges(model);
    if (edges) this.content.add(edges);
    const labels = this.buildLabelEdges(model);
    if (labels) this.content.add(labels);
    for (const axis of model.axes) {
      const group = this.buildAxis(axis);
      this.axisPickables.push(group);
      this.content.add(group);
    }
    this.scene.add(this.content);
    this.render();
  }

  render(): void {
    this.renderer.render(this.scene, this.camera);
  }

  /** Objects a picker may hit to start an axis drag; userData.dimension is set. */
  get pickables(): THREE.Object3D[] {
    return this.axisPickables;
  }

  resize(width: number, height: number): void {
    this.renderer.setSize(width, height, false);
    this.camera.aspect = width / height;
    this.camera.updateProjectionMatrix();
    this.render();
  }

  // ----- camera -----

  attachOrbit(element: HTMLElement): void {
    let dragging = false;
    let lastX = 0;
    let lastY = 0;
    element.addEventListener('pointerdown', (e) => {
      if (e.button !== 0 || e.shiftKey) return; // shift-drag is axis movement
      dragging = true;
      lastX = e.clientX;
      lastY = e.clientY;
    });
    element.addEventListener('pointermove', (e) => {
      if (!dragging) return;
      this.orbit.theta -= (e.clientX - lastX) * 0.005;
      this.orbit.phi = clamp(this.orbit.phi - (e.clientY - lastY) * 0.005, 0.05, Math.PI - 0.05);
      lastX = e.clientX;
      lastY = e.clientY;
      this.applyOrbit();
      this.render();
    });
    element.addEventListener('pointerup', () => {
      dragging = false;
    });
    element.addEventListener('wheel', (e) => {
      e.preventDefault();
      this.orbit.radius = clamp(this.orbit.radius * (1 + Math.sign(e.deltaY) * 0.1), 1.2, 12);
      this.applyOrbit();
      this.render();
    });
  }

  private applyOrbit(): void {
    const { theta, phi, radius } = this.orbit;
    this.camera.position.set(
      radius * Math.sin(phi) * Math.sin(theta),
      radius * Math.cos(phi),
      radius * Math.sin(phi) * Math.cos(theta),
    );
    this.camera.lookAt(0, 0, 0);
  }

  // ----- builders -----

  private buildNodes(model: RenderModel): THREE.InstancedMesh {
    const material = new THREE.MeshLambertMaterial();
    const mesh = new THREE.InstancedMesh(this.nodeGeometry, material, model.nodes.length);
    const matrix = new THREE.Matrix4();
    const color = new THREE.Color();
    model.nodes.forEach((node, i) => {
      const scale = node.selected ? SELECTED_SCALE : 1.0;
      matrix.makeScale(scale, scale, scale);
      matrix.setPosition(node.position[0], node.position[1], node.position[2]);
      mesh.setMatrixAt(i, matrix);
      mesh.setColorAt(i, color.set(node.color));
    });
    mesh.instanceMatrix.needsUpdate = true;
    if (mesh.instanceColor) mesh.instanceColor.needsUpdate = true;
    return mesh;
  }

  private buildGraphEdges(model: RenderModel): THREE.LineSegments | null {
    if (model.graphEdges.length === 0) return null;
    const positions = new Float32Array(model.graphEdges.length * 6);
    const colors = new Float32Array(model.graphEdges.length * 6);
    const color = new THREE.Color();
    model.graphEdges.forEach((edge, i) => {
      positions.set(edge.from, i * 6);
      positions.set(edge.to, i * 6 + 3);
      color.set(edge.fromColor);
      colors.set([color.r, color.g, color.b], i * 6);
      color.set(edge.toColor);
      colors.set([color.r, color.g, color.b], i * 6 + 3);
    });
    const geometry = new THREE.BufferGeometry();
    geometry.setAttribute('position', new THREE.BufferAttribute(positions, 3));
    geometry.setAttribute('color', new THREE.BufferAttribute(colors, 3));
    const material = new THREE.LineBasicMaterial({
      vertexColors: true,
      transparent: true,
      opacity: 0.55,
    });
    return new THREE.LineSegments(geometry, material);
  }

  private buildLabelEdges(model: RenderModel): THREE.LineSegments | null {
    if (model.labelEdges.length === 0) return null;
    const positions = new Float32Array(model.labelEdges.length * 6);
    model.labelEdges.forEach((edge, i) => {
      positions.set(edge.from, i * 6);
      positions.set(edge.to, i * 6 + 3);
    });
    const geometry = new THREE.BufferGeometry();
    geometry.setAttribute('position', new THREE.BufferAttribute(positions, 3));
    const material = new THREE.LineDashedMaterial({ color: 0xf1f3f5, ...DASH });
    const lines = new THREE.LineSegments(geometry, material);
    lines.computeLineDistances(); // dashes need per-vertex distances
    return lines;
  }

  private buildAxis(axis: AxisModel): THREE.Group {
    const group = new THREE.Group();
    group.userData.dimension = axis.dimension;

    const spine = new THREE.BufferGeometry().setFromPoints([
      new THREE.Vector3(...axis.start),
      new THREE.Vector3(...axis.end),
    ]);
    group.add(new THREE.Line(spine, new THREE.LineBasicMaterial({ color: axis.color })));

    // histogram bars sit beside the spine, depth encodes the bin count
    const direction = new THREE.Vector3(...axis.end).sub(new THREE.Vector3(...axis.start));
    const side = pickPerpendicular(direction);
    const barMaterial = new THREE.MeshLambertMaterial({ color: axis.color });
    for (const bar of axis.bars) {
      if (bar.count === 0) continue;
      const depth = BAR_MAX_DEPTH * bar.fraction;
      const box = new THREE.Mesh(new THREE.BoxGeometry(BAR_THICKNESS, BAR_THICKNESS, depth), barMaterial);
      box.position.set(...bar.center);
      box.position.addScaledVector(side, BAR_THICKNESS + depth / 2);
      box.lookAt(new THREE.Vector3(...bar.center));
      group.add(box);
    }

    // two-handle filter: black lower rhombus, white upper
    const lo = new THREE.Mesh(this.handleGeometry, new THREE.MeshBasicMaterial({ color: 0x000000 }));
    lo.position.set(...axis.handleLo);
    const hi = new THREE.Mesh(this.handleGeometry, new THREE.MeshBasicMaterial({ color: 0xffffff }));
    hi.position.set(...axis.handleHi);
    group.add(lo, hi);
    return group;
  }

  private disposeContent(): void {
    this.scene.remove(this.content);
    this.content.traverse((obj) => {
      if (obj instanceof THREE.Mesh || obj instanceof THREE.Line) {
        obj.geometry.dispose();
        const material = obj.material as THREE.Material | THREE.Material[];
        if (Array.isArray(material)) material.forEach((m) => m.dispose());
        else material.dispose();
      }
      if (obj instanceof THREE.InstancedMesh) obj.dispose();
    });
  }
}

function clamp(v: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, v));
}

function pickPerpendicular(direction: THREE.Vector3): THREE.Vector3 {
  const axis = Math.abs(direction.x) < 0.9 ? new THREE.Vector3(1, 0, 0) : new THREE.Vector3(0, 0, 1);
  return new THREE.Vector3().crossVectors(direction, axis).normalize();
}
