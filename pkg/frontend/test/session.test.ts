import { describe, expect, it } from 'vitest';
import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import {
  SchemaError,
  exportLabels,
  importLabels,
  isComplete,
  loadSession,
  parseClusters,
  setChoice,
  unlabeledClusters,
} from '../src/session.js';

const here = dirname(fileURLToPath(import.meta.url));
const fixture = readFileSync(join(here, 'fixtures', 'clusters.json'), 'utf8');

function smallSession() {
  return loadSession(
    JSON.stringify({
      clusters: [
        { id: 0, size: 4, representatives: [] },
        { id: 1, size: 2, representatives: [{ table_id: 't1', html: '<table></table>', grid: [[['a']]] }] },
        { id: 2, size: 9, representatives: [] },
      ],
    }),
  );
}

describe('parseClusters', () => {
  it('loads the generated fixture', () => {
    const clusters = parseClusters(fixture);
    expect(clusters).toHaveLength(3);
    for (const cluster of clusters) {
      expect(cluster.representatives.length).toBeGreaterThan(0);
      for (const rep of cluster.representatives) {
        expect(rep.html).toContain('<table');
        expect(Array.isArray(rep.grid)).toBe(true);
      }
    }
  });

  it('rejects non-JSON', () => {
    expect(() => parseClusters('nope{')).toThrow(SchemaError);
  });

  it('rejects wrong top level', () => {
    expect(() => parseClusters('{"rows": []}')).toThrow(SchemaError);
    expect(() => parseClusters('[1,2]')).toThrow(SchemaError);
  });

  it('rejects bad cluster entries', () => {
    expect(() => parseClusters('{"clusters":[{"id":-1,"size":0,"representatives":[]}]}')).toThrow(
      SchemaError,
    );
    expect(() =>
      parseClusters('{"clusters":[{"id":0,"size":0,"representatives":[]},{"id":0,"size":0,"representatives":[]}]}'),
    ).toThrow(/duplicate/);
    expect(() =>
      parseClusters('{"clusters":[{"id":0,"size":1,"representatives":[{"table_id":"","html":"","grid":[]}]}]}'),
    ).toThrow(SchemaError);
    expect(() =>
      parseClusters('{"clusters":[{"id":0,"size":1,"representatives":[{"table_id":"t","html":"","grid":[[["x"],[1]]]}]}]}'),
    ).toThrow(/token strings/);
  });
});

describe('choices and export', () => {
  it('tracks unlabeled clusters', () => {
    const session = smallSession();
    expect(unlabeledClusters(session)).toEqual([0, 1, 2]);
    setChoice(session, 1, 'matrix');
    expect(unlabeledClusters(session)).toEqual([0, 2]);
    expect(isComplete(session)).toBe(false);
  });

  it('refuses export while incomplete', () => {
    const session = smallSession();
    setChoice(session, 0, 'relational');
    expect(() => exportLabels(session)).toThrow(/unlabeled clusters: 1, 2/);
  });

  it('unknown is a valid explicit choice', () => {
    const session = smallSession();
    setChoice(session, 0, 'relational');
    setChoice(session, 1, 'unknown');
    setChoice(session, 2, 'non_data');
    const exported = JSON.parse(exportLabels(session));
    expect(exported).toEqual({ '0': 'relational', '1': 'unknown', '2': 'non_data' });
  });

  it('export format matches the classifier contract exactly', () => {
    const session = smallSession();
    setChoice(session, 0, 'relational');
    setChoice(session, 1, 'matrix');
    setChoice(session, 2, 'non_data');
    const text = exportLabels(session);
    expect(JSON.parse(text)).toEqual({ '0': 'relational', '1': 'matrix', '2': 'non_data' });
    for (const value of Object.values(JSON.parse(text))) {
      expect(value).toMatch(/^[a-z_]+$/);
    }
  });

  it('rejects choices for unknown clusters', () => {
    const session = smallSession();
    expect(() => setChoice(session, 77, 'matrix')).toThrow(SchemaError);
  });
});

describe('import round trip', () => {
  it('restores exported choices exactly', () => {
    const session = smallSession();
    setChoice(session, 0, 'entity');
    setChoice(session, 1, 'list');
    setChoice(session, 2, 'unknown');
    const text = exportLabels(session);

    const fresh = smallSession();
    importLabels(fresh, text);
    expect(fresh.chosen).toEqual(session.chosen);
    expect(exportLabels(fresh)).toBe(text);
  });

  it('rejects label maps that reference unknown clusters or types', () => {
    const session = smallSession();
    expect(() => importLabels(session, '{"9":"matrix"}')).toThrow(/unknown cluster/);
    expect(() => importLabels(session, '{"0":"tabular"}')).toThrow(/invalid table type/);
    expect(() => importLabels(session, '[1]')).toThrow(SchemaError);
  });
});
