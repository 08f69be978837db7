import { readFileSync } from 'node:fs';
import { parse } from 'csv-parse/sync';

export type Row = Record<string, string>;

/** A user-facing input problem: bad file, missing column, unparsable number. */
export class DiagnosticError extends Error {}

export function readCsv(path: string): Row[] {
  let text: string;
  try {
    text = readFileSync(path, 'utf8');
  } catch (err) {
    throw new DiagnosticError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const rows = parse(text, { columns: true, skip_empty_lines: true }) as Row[];
  if (rows.length === 0) {
    throw new DiagnosticError(`${path} has a header but no data rows`);
  }
  return rows;
}

export function requireColumns(rows: Row[], cols: string[], source: string): void {
  const have = new Set(Object.keys(rows[0] ?? {}));
  const missing = cols.filter((c) => !have.has(c));
  if (missing.length > 0) {
    throw new DiagnosticError(
      `${source} is missing column(s): ${missing.join(', ')} ` +
      `(found: ${[...have].join(', ')})`);
  }
}

export function num(row: Row, col: string, source: string): number {
  const v = Number(row[col]);
  if (!Number.isFinite(v)) {
    throw new DiagnosticError(`${source}: column ${col} has non-numeric value "${row[col]}"`);
  }
  return v;
}
