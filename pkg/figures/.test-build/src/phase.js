import { num, readCsv, requireColumns } from './csv.js';
import { diverging, esc, openSvg, text } from './svg.js';
const W = 860;
const H = 560;
const MARGIN = { top: 56, right: 110, bottom: 72, left: 96 };
/**
 * Seed-average diff_h per (density, traffic) cell. Aggregate rows the
 * simulator may have appended (seed == "mean") are ignored so cells are
 * always averaged from the raw per-seed rows.
 */
export function averageCells(rows, source) {
    const acc = new Map();
    for (const row of rows) {
        if (row['seed'] === 'mean')
            continue;
        const density = num(row, 'density', source);
        const msgs = num(row, 'msgs_per_period', source);
        const key = `${density}|${msgs}`;
        const cell = acc.get(key) ?? { density, msgs, sum: 0, n: 0 };
        cell.sum += num(row, 'diff_h', source);
        cell.n += 1;
        acc.set(key, cell);
    }
    return [...acc.values()].map((c) => ({ density: c.density, msgs: c.msgs, diff: c.sum / c.n }));
}
/** Heatmap of the battery-aware half-life advantage across the sweep grid. */
export function renderPhase(path) {
    const rows = readCsv(path);
    requireColumns(rows, ['density', 'msgs_per_period', 'seed', 'diff_h'], path);
    const cells = averageCells(rows, path);
    const densities = [...new Set(cells.map((c) => c.density))].sort((a, b) => a - b);
    const msgsLevels = [...new Set(cells.map((c) => c.msgs))].sort((a, b) => a - b);
    const byKey = new Map(cells.map((c) => [`${c.density}|${c.msgs}`, c.diff]));
    // symmetric scale so zero always lands on the neutral color
    const vMax = Math.max(...cells.map((c) => Math.abs(c.diff)));
    const tOf = (diff) => (vMax === 0 ? 0 : diff / vMax);
    const x0 = MARGIN.left;
    const y0 = MARGIN.top;
    const plotW = W - MARGIN.left - MARGIN.right;
    const plotH = H - MARGIN.top - MARGIN.bottom;
    const cw = plotW / densities.length;
    const ch = plotH / msgsLevels.length;
    const parts = [openSvg(W, H)];
    parts.push(text(W / 2, 26, 'half-life advantage of battery-aware attachment (hours)', 'text-anchor="middle" font-size="15" fill="#111"'));
    for (let yi = 0; yi < msgsLevels.length; yi++) {
        // heavy traffic at the top, like the sweep tables read
        const msgs = msgsLevels[msgsLevels.length - 1 - yi];
        for (let xi = 0; xi < densities.length; xi++) {
            const density = densities[xi];
            const diff = byKey.get(`${density}|${msgs}`);
            const cx = x0 + xi * cw;
            const cy = y0 + yi * ch;
            if (diff === undefined) {
                parts.push(`<rect class="cell" x="${cx.toFixed(1)}" y="${cy.toFixed(1)}" ` +
                    `width="${cw.toFixed(1)}" height="${ch.toFixed(1)}" ` +
                    `fill="white" stroke="#bbb"/>`);
                continue;
            }
            const t = tOf(diff);
            const label = `${diff >= 0 ? '+' : ''}${diff.toFixed(1)}`;
            parts.push(`<rect class="cell" x="${cx.toFixed(1)}" y="${cy.toFixed(1)}" ` +
                `width="${cw.toFixed(1)}" height="${ch.toFixed(1)}" ` +
                `fill="${diverging(t)}" stroke="#fff"/>`);
            parts.push(text(cx + cw / 2, cy + ch / 2 + 4, label, `text-anchor="middle" font-size="11" ` +
                `fill="${Math.abs(t) > 0.6 ? 'white' : '#222'}"`));
        }
    }
    for (let xi = 0; xi < densities.length; xi++) {
        parts.push(text(x0 + (xi + 0.5) * cw, y0 + plotH + 18, String(densities[xi]), 'text-anchor="middle" fill="#333"'));
    }
    for (let yi = 0; yi < msgsLevels.length; yi++) {
        const msgs = msgsLevels[msgsLevels.length - 1 - yi];
        parts.push(text(x0 - 10, y0 + (yi + 0.5) * ch + 4, String(msgs), 'text-anchor="end" fill="#333"'));
    }
    parts.push(text(x0 + plotW / 2, y0 + plotH + 44, 'phone density (per unit area)', 'text-anchor="middle" fill="#111"'));
    parts.push(`<text x="${x0 - 56}" y="${y0 + plotH / 2}" text-anchor="middle" fill="#111" ` +
        `transform="rotate(-90 ${x0 - 56} ${y0 + plotH / 2})">` +
        `${esc('messages per period')}</text>`);
    // colorbar: green means the battery-aware tree outlives the mesh
    const barX = W - MARGIN.right + 28;
    const barH = plotH * 0.8;
    const barY = y0 + (plotH - barH) / 2;
    const steps = 32;
    for (let i = 0; i < steps; i++) {
        const t = 1 - (2 * i) / (steps - 1);
        parts.push(`<rect x="${barX}" y="${(barY + (i * barH) / steps).toFixed(1)}" ` +
            `width="14" height="${(barH / steps + 0.5).toFixed(1)}" ` +
            `fill="${diverging(t)}"/>`);
    }
    parts.push(`<rect x="${barX}" y="${barY.toFixed(1)}" width="14" height="${barH.toFixed(1)}" ` +
        `fill="none" stroke="#333"/>`);
    parts.push(text(barX + 20, barY + 6, `+${vMax.toFixed(0)}h sos`, 'fill="#333" font-size="11"'));
    parts.push(text(barX + 20, barY + barH / 2 + 4, '0', 'fill="#333" font-size="11"'));
    parts.push(text(barX + 20, barY + barH, `-${vMax.toFixed(0)}h mesh`, 'fill="#333" font-size="11"'));
    parts.push('</svg>\n');
    return parts.join('\n');
}
