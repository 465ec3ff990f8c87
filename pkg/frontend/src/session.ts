import type { ClusterEntry, LabelSession, TableType } from './types.js';
import { isTableType } from './types.js';

export class SchemaError extends Error {}

function fail(message: string): never {
  throw new SchemaError(message);
}

function checkRepresentative(value: unknown, where: string): void {
  if (typeof value !== 'object' || value === null) {
    fail(`${where}: representative must be an object`);
  }
  const rep = value as Record<string, unknown>;
  if (typeof rep.table_id !== 'string' || !rep.table_id) {
    fail(`${where}: representative needs a table_id string`);
  }
  if (typeof rep.html !== 'string') {
    fail(`${where}: representative needs an html string`);
  }
  if (!Array.isArray(rep.grid)) {
    fail(`${where}: representative needs a grid array`);
  }
  for (const row of rep.grid as unknown[]) {
    if (!Array.isArray(row)) {
      fail(`${where}: grid rows must be arrays`);
    }
    for (const cell of row as unknown[]) {
      if (!Array.isArray(cell) || (cell as unknown[]).some((t) => typeof t !== 'string')) {
        fail(`${where}: grid cells must be arrays of token strings`);
      }
    }
  }
}

/** Parse and fully validate a clusters-for-labeling file; throws SchemaError
 * on any mismatch so a broken file never half-loads. */
export function parseClusters(text: string): ClusterEntry[] {
  let data: unknown;
  try {
    data = JSON.parse(text);
  } catch (err) {
    fail(`not valid JSON: ${(err as Error).message}`);
  }
  if (typeof data !== 'object' || data === null || !Array.isArray((data as any).clusters)) {
    fail('top level must be an object with a "clusters" array');
  }
  const seen = new Set<number>();
  const clusters: ClusterEntry[] = [];
  (data as { clusters: unknown[] }).clusters.forEach((entry, index) => {
    const where = `clusters[${index}]`;
    if (typeof entry !== 'object' || entry === null) {
      fail(`${where}: must be an object`);
    }
    const cluster = entry as Record<string, unknown>;
    if (typeof cluster.id !== 'number' || !Number.isInteger(cluster.id) || cluster.id < 0) {
      fail(`${where}: id must be a non-negative integer`);
    }
    if (seen.has(cluster.id)) {
      fail(`${where}: duplicate cluster id ${cluster.id}`);
    }
    seen.add(cluster.id);
    if (typeof cluster.size !== 'number' || !Number.isInteger(cluster.size) || cluster.size < 0) {
      fail(`${where}: size must be a non-negative integer`);
    }
    if (!Array.isArray(cluster.representatives)) {
      fail(`${where}: representatives must be an array`);
    }
    cluster.representatives.forEach((rep, r) => checkRepresentative(rep, `${where}.representatives[${r}]`));
    clusters.push({
      id: cluster.id,
      size: cluster.size,
      representatives: cluster.representatives as ClusterEntry['representatives'],
    });
  });
  return clusters;
}

export function newSession(clusters: ClusterEntry[]): LabelSession {
  return { clusters, chosen: new Map() };
}

export function loadSession(text: string): LabelSession {
  return newSession(parseClusters(text));
}

export function setChoice(session: LabelSession, clusterId: number, choice: TableType): void {
  if (!session.clusters.some((c) => c.id === clusterId)) {
    throw new SchemaError(`no such cluster: ${clusterId}`);
  }
  session.chosen.set(clusterId, choice);
}

/** Export needs every cluster decided; "unknown" is a valid explicit choice. */
export function unlabeledClusters(session: LabelSession): number[] {
  return session.clusters.filter((c) => !session.chosen.has(c.id)).map((c) => c.id);
}

export function isComplete(session: LabelSession): boolean {
  return unlabeledClusters(session).length === 0;
}

/** Serialize the label map exactly as the classifier consumes it. */
export function exportLabels(session: LabelSession): string {
  const missing = unlabeledClusters(session);
  if (missing.length > 0) {
    throw new SchemaError(`unlabeled clusters: ${missing.join(', ')}`);
  }
  const out: Record<string, TableType> = {};
  for (const cluster of session.clusters) {
    out[String(cluster.id)] = session.chosen.get(cluster.id) as TableType;
  }
  return JSON.stringify(out, null, 2) + '\n';
}

/** Restore choices from a previously exported file. */
export function importLabels(session: LabelSession, text: string): void {
  let data: unknown;
  try {
    data = JSON.parse(text);
  } catch (err) {
    fail(`not valid JSON: ${(err as Error).message}`);
  }
  if (typeof data !== 'object' || data === null || Array.isArray(data)) {
    fail('label map must be a JSON object');
  }
  const restored = new Map<number, TableType>();
  for (const [key, value] of Object.entries(data as Record<string, unknown>)) {
    const clusterId = Number(key);
    if (!Number.isInteger(clusterId) || !session.clusters.some((c) => c.id === clusterId)) {
      fail(`label map references unknown cluster: ${key}`);
    }
    if (typeof value !== 'string' || !isTableType(value)) {
      fail(`invalid table type for cluster ${key}: ${String(value)}`);
    }
    restored.set(clusterId, value);
  }
  session.chosen.clear();
  for (const [clusterId, choice] of restored) {
    session.chosen.set(clusterId, choice);
  }
}
