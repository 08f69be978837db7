/** Just enough SVG assembly for line charts and heatmaps. */

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export type Scale = (v: number) => number;

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;  // degenerate domain maps everything to r0
  return (v: number) => r0 + ((v - d0) / span) * (r1 - r0);
}

export function esc(s: string): string {
  return s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;')
          .replace(/"/g, '&quot;');
}

/** Round tick positions covering [min, max] with a 1/2/5 step. */
export function niceTicks(min: number, max: number, count = 6): number[] {
  if (!(max > min)) return [min];
  const raw = (max - min) / Math.max(1, count - 1);
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const norm = raw / mag;
  const step = (norm <= 1 ? 1 : norm <= 2 ? 2 : norm <= 5 ? 5 : 10) * mag;
  const ticks: number[] = [];
  for (let t = Math.ceil(min / step) * step; t <= max + step * 1e-9; t += step) {
    ticks.push(Math.abs(t) < step * 1e-9 ? 0 : t);
  }
  return ticks;
}

export function fmtTick(v: number): string {
  const a = Math.abs(v);
  if (a !== 0 && (a < 0.01 || a >= 100000)) return v.toExponential(1);
  return String(Number(v.toFixed(3)));
}

export function polylinePoints(xs: number[], ys: number[], sx: Scale, sy: Scale): string {
  const pts: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    pts.push(`${sx(xs[i]!).toFixed(2)},${sy(ys[i]!).toFixed(2)}`);
  }
  return pts.join(' ');
}

export function text(x: number, y: number, s: string, attrs = ''): string {
  return `<text x="${x.toFixed(1)}" y="${y.toFixed(1)}" ${attrs}>${esc(s)}</text>`;
}

export function openSvg(width: number, height: number): string {
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
         `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="12">\n` +
         `<rect width="${width}" height="${height}" fill="white"/>\n`;
}

/** Axes, grid lines, tick labels, and axis titles for one plot panel. */
export function axes(
  x0: number, y0: number, x1: number, y1: number,
  sx: Scale, sy: Scale, xTicks: number[], yTicks: number[],
  xLabel: string, yLabel: string,
): string {
  const parts: string[] = [];
  parts.push(`<g stroke="#ddd" stroke-width="1">`);
  for (const t of yTicks) {
    const y = sy(t);
    parts.push(`<line x1="${x0}" y1="${y.toFixed(1)}" x2="${x1}" y2="${y.toFixed(1)}"/>`);
  }
  parts.push(`</g>`);
  parts.push(`<g stroke="#333" stroke-width="1">`);
  parts.push(`<line x1="${x0}" y1="${y1}" x2="${x1}" y2="${y1}"/>`);
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}"/>`);
  for (const t of xTicks) {
    const x = sx(t);
    parts.push(`<line x1="${x.toFixed(1)}" y1="${y1}" x2="${x.toFixed(1)}" y2="${y1 + 4}"/>`);
  }
  parts.push(`</g>`);
  for (const t of xTicks) {
    parts.push(text(sx(t), y1 + 18, fmtTick(t), 'text-anchor="middle" fill="#333"'));
  }
  for (const t of yTicks) {
    parts.push(text(x0 - 6, sy(t) + 4, fmtTick(t), 'text-anchor="end" fill="#333"'));
  }
  const cx = (x0 + x1) / 2;
  parts.push(text(cx, y1 + 36, xLabel, 'text-anchor="middle" fill="#111"'));
  const cy = (y0 + y1) / 2;
  parts.push(`<text x="${x0 - 42}" y="${cy.toFixed(1)}" text-anchor="middle" fill="#111" ` +
             `transform="rotate(-90 ${x0 - 42} ${cy.toFixed(1)})">${esc(yLabel)}</text>`);
  return parts.join('\n');
}

/** Diverging color ramp: -1 deep red, 0 near-white, +1 deep green. */
export function diverging(t: number): string {
  const u = Math.max(-1, Math.min(1, t));
  const neutral = [247, 247, 247];
  const green = [27, 132, 73];
  const red = [192, 57, 43];
  const to = u >= 0 ? green : red;
  const k = Math.abs(u);
  const c = neutral.map((n, i) => Math.round(n + (to[i]! - n) * k));
  return '#' + c.map((v) => v.toString(16).padStart(2, '0')).join('');
}
