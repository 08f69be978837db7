import { readFileSync } from 'node:fs';
import { parse } from 'csv-parse/sync';
/** A user-facing input problem: bad file, missing column, unparsable number. */
export class DiagnosticError extends Error {
}
export function readCsv(path) {
    let text;
    try {
        text = readFileSync(path, 'utf8');
    }
    catch (err) {
        throw new DiagnosticError(`cannot read ${path}: ${err.message}`);
    }
    const rows = parse(text, { columns: true, skip_empty_lines: true });
    if (rows.length === 0) {
        throw new DiagnosticError(`${path} has a header but no data rows`);
    }
    return rows;
}
export function requireColumns(rows, cols, source) {
    const have = new Set(Object.keys(rows[0] ?? {}));
    const missing = cols.filter((c) => !have.has(c));
    if (missing.length > 0) {
        throw new DiagnosticError(`${source} is missing column(s): ${missing.join(', ')} ` +
            `(found: ${[...have].join(', ')})`);
    }
}
export function num(row, col, source) {
    const v = Number(row[col]);
    if (!Number.isFinite(v)) {
        throw new DiagnosticError(`${source}: column ${col} has non-numeric value "${row[col]}"`);
    }
    return v;
}
