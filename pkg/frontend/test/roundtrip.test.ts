// Acceptance: labels chosen in the UI flow into the classifier unchanged.
// Loads the committed 3-cluster fixture, assigns a type per cluster, exports,
// and feeds the exported file to the real `classify` subcommand; every member
// table must come back labeled with its cluster's choice.

import { execFileSync } from 'node:child_process';
import { mkdtempSync, readFileSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';
import { describe, expect, it } from 'vitest';

import { exportLabels, importLabels, loadSession, setChoice } from '../src/session.js';
import type { TableType } from '../src/types.js';

const here = dirname(fileURLToPath(import.meta.url));
const fixtures = join(here, 'fixtures');
const repoRoot = join(here, '..', '..');

const ASSIGNED: Record<number, TableType> = { 0: 'matrix', 1: 'non_data', 2: 'relational' };

describe('label export round trip through the classifier', () => {
  it('classify consumes the export unchanged and labels every member', () => {
    const session = loadSession(readFileSync(join(fixtures, 'clusters.json'), 'utf8'));
    for (const cluster of session.clusters) {
      setChoice(session, cluster.id, ASSIGNED[cluster.id]);
    }
    const exported = exportLabels(session);

    const work = mkdtempSync(join(tmpdir(), 'labeler-'));
    const labelsPath = join(work, 'labels.json');
    const predictionsPath = join(work, 'predictions.jsonl');
    writeFileSync(labelsPath, exported);

    execFileSync(
      'python3',
      [
        '-m', 'tabletyper.cli', 'classify',
        '--model', join(fixtures, 'model.json'),
        '--labels', labelsPath,
        '--out', predictionsPath,
      ],
      { cwd: repoRoot, stdio: 'pipe' },
    );

    const predictions = new Map<string, string>();
    for (const line of readFileSync(predictionsPath, 'utf8').trim().split('\n')) {
      const record = JSON.parse(line);
      if ('_meta' in record) continue;
      predictions.set(record.table_id, record.type);
    }

    // independent reading of the model file: every assigned table must carry
    // exactly its cluster's exported label
    const model = JSON.parse(readFileSync(join(fixtures, 'model.json'), 'utf8'));
    const assignments: Record<string, number> = model.assignments;
    expect(predictions.size).toBe(Object.keys(assignments).length);
    for (const [tableId, cluster] of Object.entries(assignments)) {
      expect(predictions.get(tableId)).toBe(ASSIGNED[cluster]);
    }
  });

  it('re-import of the exported file restores the session choices', () => {
    const session = loadSession(readFileSync(join(fixtures, 'clusters.json'), 'utf8'));
    for (const cluster of session.clusters) {
      setChoice(session, cluster.id, ASSIGNED[cluster.id]);
    }
    const exported = exportLabels(session);

    const fresh = loadSession(readFileSync(join(fixtures, 'clusters.json'), 'utf8'));
    importLabels(fresh, exported);
    expect(exportLabels(fresh)).toBe(exported);
  });
});
