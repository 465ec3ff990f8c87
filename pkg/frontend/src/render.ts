// HTML-string rendering, kept free of document access so it is testable in a
// plain node environment; app.ts owns the thin DOM wiring.

import { escapeHtml, sanitizeTableHtml } from './sanitize.js';
import type { ClusterEntry, LabelSession, Representative } from './types.js';
import { TABLE_TYPES } from './types.js';

export function renderGrid(grid: string[][][]): string {
  if (grid.length === 0) {
    return '<p class="empty">empty grid</p>';
  }
  const rows = grid
    .map(
      (row) =>
        '<tr>' +
        row.map((cell) => `<td>${escapeHtml(cell.join(' ')) || '&nbsp;'}</td>`).join('') +
        '</tr>',
    )
    .join('');
  return `<table class="token-grid">${rows}</table>`;
}

export function renderRepresentative(rep: Representative): string {
  return (
    `<div class="rep" data-table-id="${escapeHtml(rep.table_id)}">` +
    `<div class="rep-id">${escapeHtml(rep.table_id)}</div>` +
    `<div class="rep-panes">` +
    `<div class="rep-html">${sanitizeTableHtml(rep.html)}</div>` +
    `<div class="rep-grid">${renderGrid(rep.grid)}</div>` +
    `</div></div>`
  );
}

export function renderChoices(cluster: ClusterEntry, chosen?: string): string {
  return TABLE_TYPES.map((type) => {
    const checked = chosen === type ? ' checked' : '';
    return (
      `<label class="choice"><input type="radio" name="cluster-${cluster.id}" ` +
      `value="${type}"${checked}> ${type}</label>`
    );
  }).join('');
}

export function renderCluster(cluster: ClusterEntry, chosen?: string): string {
  const reps =
    cluster.representatives.length === 0
      ? '<p class="empty">no representatives</p>'
      : cluster.representatives.map(renderRepresentative).join('');
  const status = chosen
    ? `<span class="status labeled">${escapeHtml(chosen)}</span>`
    : '<span class="status pending">unlabeled</span>';
  return (
    `<section class="cluster" data-cluster-id="${cluster.id}">` +
    `<h2>Cluster ${cluster.id} <small>(${cluster.size} tables)</small> ${status}</h2>` +
    `<div class="choices">${renderChoices(cluster, chosen)}</div>` +
    reps +
    `</section>`
  );
}

export function renderSession(session: LabelSession): string {
  const panels = session.clusters
    .map((cluster) => renderCluster(cluster, session.chosen.get(cluster.id)))
    .join('');
  const pending = session.clusters.filter((c) => !session.chosen.has(c.id)).length;
  const exportDisabled = pending > 0 ? ' disabled' : '';
  const note = pending > 0 ? `${pending} cluster(s) still unlabeled` : 'ready to export';
  return (
    `<div class="toolbar">` +
    `<button id="export-btn"${exportDisabled}>Export labels</button>` +
    `<label class="import">Import labels <input type="file" id="import-input" accept=".json"></label>` +
    `<span id="export-note">${note}</span>` +
    `</div>` +
    panels
  );
}

export function renderError(message: string): string {
  return `<div class="load-error">Could not load clusters file: ${escapeHtml(message)}</div>`;
}
