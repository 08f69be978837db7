import { axes, linearScale, niceTicks, openSvg, polylinePoints, text } from './svg.js';

export interface Series {
  label: string;
  color: string;
  x: number[];  // hours
  y: number[];
}

export interface LineFigure {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  band?: [Series, Series];  // filled region between two curves
  yDomain?: [number, number];
}

const W = 720;
const H = 440;
const MARGIN = { top: 44, right: 24, bottom: 56, left: 64 };

export function lineFigure(fig: LineFigure): string {
  const x0 = MARGIN.left;
  const x1 = W - MARGIN.right;
  const y0 = MARGIN.top;
  const y1 = H - MARGIN.bottom;

  let xMax = 0;
  let yMax = -Infinity;
  let yMin = Infinity;
  for (const s of fig.series) {
    for (const v of s.x) xMax = Math.max(xMax, v);
    for (const v of s.y) { yMax = Math.max(yMax, v); yMin = Math.min(yMin, v); }
  }
  const [d0, d1] = fig.yDomain ?? padDomain(yMin, yMax);
  const sx = linearScale(0, xMax || 1, x0, x1);
  const sy = linearScale(d0, d1, y1, y0);

  // hour axis reads best in half-day steps once runs get long
  const xTicks = xMax >= 48 ? rangeTicks(0, xMax, 12) : niceTicks(0, xMax || 1);
  const yTicks = niceTicks(d0, d1);

  const parts: string[] = [openSvg(W, H)];
  parts.push(text(W / 2, 24, fig.title, 'text-anchor="middle" font-size="15" fill="#111"'));
  parts.push(axes(x0, y0, x1, y1, sx, sy, xTicks, yTicks, fig.xLabel, fig.yLabel));

  if (fig.band) {
    const [a, b] = fig.band;
    const fwd = polylinePoints(a.x, a.y, sx, sy);
    const back = polylinePoints([...b.x].reverse(), [...b.y].reverse(), sx, sy);
    parts.push(`<polygon class="band" points="${fwd} ${back}" ` +
               `fill="#ffd54d" fill-opacity="0.45" stroke="none"/>`);
  }
  for (const s of fig.series) {
    parts.push(`<polyline class="curve" points="${polylinePoints(s.x, s.y, sx, sy)}" ` +
               `fill="none" stroke="${s.color}" stroke-width="2"/>`);
  }

  let ly = y0 + 14;
  for (const s of fig.series) {
    parts.push(`<line x1="${x1 - 130}" y1="${ly - 4}" x2="${x1 - 106}" y2="${ly - 4}" ` +
               `stroke="${s.color}" stroke-width="3"/>`);
    parts.push(text(x1 - 100, ly, s.label, 'fill="#333"'));
    ly += 18;
  }

  parts.push('</svg>\n');
  return parts.join('\n');
}

function padDomain(min: number, max: number): [number, number] {
  if (!Number.isFinite(min) || !Number.isFinite(max)) return [0, 1];
  const lo = Math.min(0, min);
  const hi = max <= lo ? lo + 1 : max + (max - lo) * 0.08;
  return [lo, hi];
}

function rangeTicks(from: number, to: number, step: number): number[] {
  const out: number[] = [];
  for (let t = from; t <= to + 1e-9; t += step) out.push(t);
  return out;
}
