import { renderError, renderSession } from './render.js';
import { exportLabels, importLabels, loadSession, setChoice } from './session.js';
import type { LabelSession, TableType } from './types.js';
import { isTableType } from './types.js';

let session: LabelSession | null = null;

const root = () => document.getElementById('app') as HTMLElement;

function redraw(): void {
  if (session) {
    root().innerHTML = renderSession(session);
  }
}

function download(filename: string, text: string): void {
  const blob = new Blob([text], { type: 'application/json' });
  const url = URL.createObjectURL(blob);
  const link = document.createElement('a');
  link.href = url;
  link.download = filename;
  link.click();
  URL.revokeObjectURL(url);
}

async function postLabels(text: string): Promise<void> {
  try {
    await fetch('/labels', { method: 'POST', body: text });
  } catch {
    // opened from the filesystem: the download is the export
  }
}

function onExport(): void {
  if (!session) return;
  try {
    const text = exportLabels(session);
    download('labels.json', text);
    void postLabels(text);
  } catch (err) {
    alert((err as Error).message);
  }
}

function onImportFile(file: File): void {
  const reader = new FileReader();
  reader.onload = () => {
    if (!session) return;
    try {
      importLabels(session, String(reader.result));
      redraw();
    } catch (err) {
      alert((err as Error).message);
    }
  };
  reader.readAsText(file);
}

function wireEvents(): void {
  root().addEventListener('change', (event) => {
    const target = event.target as HTMLInputElement;
    if (!session || !target) return;
    if (target.id === 'import-input') {
      if (target.files && target.files[0]) onImportFile(target.files[0]);
      return;
    }
    if (target.name && target.name.startsWith('cluster-') && isTableType(target.value)) {
      setChoice(session, Number(target.name.slice('cluster-'.length)), target.value as TableType);
      redraw();
    }
  });
  root().addEventListener('click', (event) => {
    const target = event.target as HTMLElement;
    if (target && target.id === 'export-btn') onExport();
  });
}

async function fetchClusters(): Promise<string> {
  const response = await fetch('/clusters.json');
  if (!response.ok) {
    throw new Error(`server answered ${response.status}`);
  }
  return response.text();
}

function showFilePicker(): void {
  root().innerHTML =
    '<div class="picker"><p>Open a clusters-for-labeling JSON file:</p>' +
    '<input type="file" id="clusters-input" accept=".json"></div>';
  const input = document.getElementById('clusters-input') as HTMLInputElement;
  input.addEventListener('change', () => {
    const file = input.files && input.files[0];
    if (!file) return;
    const reader = new FileReader();
    reader.onload = () => {
      try {
        session = loadSession(String(reader.result));
        redraw();
      } catch (err) {
        root().innerHTML = renderError((err as Error).message);
      }
    };
    reader.readAsText(file);
  });
}

export async function start(): Promise<void> {
  wireEvents();
  try {
    session = loadSession(await fetchClusters());
    redraw();
  } catch {
    // no server (opened as file://) or bad payload: fall back to a picker
    showFilePicker();
  }
}

start();
