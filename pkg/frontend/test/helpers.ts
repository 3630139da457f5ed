import { readFileSync } from 'node:fs';
import type { Mutation, Snapshot, StreamMessage } from '../src/protocol';

export interface FixtureStep {
  label: string;
  mutation: Mutation;
  message: StreamMessage;
  snapshot: Snapshot;
}

export interface Fixture {
  config: Record<string, unknown>;
  graph: unknown;
  initial: Snapshot;
  steps: FixtureStep[];
}

let cached: Fixture | null = null;

/** Recorded wire traffic of a scripted session against the real service. */
export function loadFixture(): Fixture {
  if (!cached) {
    const raw = readFileSync(new URL('./fixtures/session.json', import.meta.url), 'utf-8');
    cached = JSON.parse(raw) as Fixture;
  }
  return cached;
}

export function stepByLabel(fixture: Fixture, label: string): FixtureStep {
  const step = fixture.steps.find((s) => s.label === label);
  if (!step) throw new Error(`fixture has no step ${label}`);
  return step;
}
