import { num, readCsv, requireColumns } from './csv.js';
import { lineFigure } from './lines.js';
export const MESH_COLOR = '#d62728';
export const SOS_COLOR = '#1f77b4';
function loadSeries(path, column, label, color) {
    const rows = readCsv(path);
    requireColumns(rows, ['hour', column], path);
    const x = [];
    const y = [];
    for (const row of rows) {
        x.push(num(row, 'hour', path));
        y.push(num(row, column, path));
    }
    return { label, color, x, y };
}
/**
 * Mesh-vs-sos time series comparison: red mesh curve, blue sos curve,
 * yellow band for the gap between them. Either input may be omitted,
 * which drops the band and flags a warning.
 */
export function renderComparison(opts) {
    const series = [];
    let mesh;
    let sos;
    if (opts.meshPath) {
        mesh = loadSeries(opts.meshPath, opts.column, 'mesh', MESH_COLOR);
        series.push(mesh);
    }
    if (opts.sosPath) {
        sos = loadSeries(opts.sosPath, opts.column, 'sos', SOS_COLOR);
        series.push(sos);
    }
    const svg = lineFigure({
        title: opts.title,
        xLabel: 'hours since outage',
        yLabel: opts.yLabel,
        series,
        band: mesh && sos ? [mesh, sos] : undefined,
        yDomain: opts.yDomain,
    });
    let warning;
    if (!mesh || !sos) {
        const have = mesh ? 'mesh' : 'sos';
        warning = `only the ${have} series was provided; drawing a single curve without the difference band`;
    }
    return { svg, warning };
}
export function renderParticipation(meshPath, sosPath) {
    return renderComparison({
        meshPath,
        sosPath,
        column: 'participation_alive',
        title: 'phones alive over time',
        yLabel: 'fraction of phones alive',
        yDomain: [0, 1.02],
    });
}
export function renderGini(meshPath, sosPath) {
    return renderComparison({
        meshPath,
        sosPath,
        column: 'gini_alive',
        title: 'battery inequality over time',
        yLabel: 'gini of alive-phone batteries',
    });
}
