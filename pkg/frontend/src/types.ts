export const TABLE_TYPES = [
  'relational',
  'entity',
  'matrix',
  'list',
  'non_data',
  'unknown',
] as const;

export type TableType = (typeof TABLE_TYPES)[number];

export function isTableType(value: string): value is TableType {
  return (TABLE_TYPES as readonly string[]).includes(value);
}

/** One table shown for a cluster: raw fragment plus its normalized token grid. */
export interface Representative {
  table_id: string;
  html: string;
  grid: string[][][];
}

export interface ClusterEntry {
  id: number;
  size: number;
  representatives: Representative[];
}

/** Parsed clusters-for-labeling file plus the user's per-cluster choices. */
export interface LabelSession {
  clusters: ClusterEntry[];
  chosen: Map<number, TableType>;
}
