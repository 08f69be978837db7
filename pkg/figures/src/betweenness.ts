import { num, readCsv, requireColumns, type Row } from './csv.js';
import { axes, linearScale, niceTicks, openSvg, polylinePoints, text } from './svg.js';

const TRACK_COLORS = ['#d62728', '#1f77b4', '#2ca02c'];
const TRACK_LABELS = ['lowest start', 'median start', 'highest start'];

const W = 720;
const H = 640;
const MARGIN = { top: 44, right: 24, bottom: 56, left: 64 };
const GAP = 52;  // vertical gap between the two panels

interface Trace {
  id: number;
  hours: number[];
  battery: number[];
  betweenness: number[];
}

/**
 * Default tracked phones: lowest, median, and highest battery at the
 * first snapshot, ties broken by phone id. Matches how the simulator's
 * own hub-adaptation checks pick their probes.
 */
export function pickTrackedIds(rows: Row[], source: string): [number, number, number] {
  const t0 = Math.min(...rows.map((r) => num(r, 'tick', source)));
  const first = rows.filter((r) => num(r, 'tick', source) === t0)
    .map((r) => ({ id: num(r, 'phone_id', source), battery: num(r, 'battery', source) }));
  first.sort((a, b) => a.battery - b.battery || a.id - b.id);
  if (first.length < 3) {
    throw new Error(`${source}: need at least 3 phones to track, found ${first.length}`);
  }
  const lo = first[0]!.id;
  const mid = first[Math.floor(first.length / 2)]!.id;
  const hi = first[first.length - 1]!.id;
  return [lo, mid, hi];
}

function collectTraces(rows: Row[], ids: number[], source: string): Trace[] {
  const byId = new Map<number, Trace>(
    ids.map((id) => [id, { id, hours: [], battery: [], betweenness: [] }]));
  for (const row of rows) {
    const trace = byId.get(num(row, 'phone_id', source));
    if (!trace) continue;
    trace.hours.push(num(row, 'tick', source) / 60);
    trace.battery.push(num(row, 'battery', source));
    trace.betweenness.push(num(row, 'betweenness', source));
  }
  for (const trace of byId.values()) {
    if (trace.hours.length === 0) {
      throw new Error(`${source}: no rows for tracked phone ${trace.id}`);
    }
  }
  return ids.map((id) => byId.get(id)!);
}

function panel(
  traces: Trace[], pick: (t: Trace) => number[],
  y0: number, y1: number, yLabel: string, xLabel: string,
): string {
  const x0 = MARGIN.left;
  const x1 = W - MARGIN.right;
  const xMax = Math.max(...traces.map((t) => t.hours[t.hours.length - 1] ?? 0), 1);
  let vMax = 0;
  for (const t of traces) for (const v of pick(t)) vMax = Math.max(vMax, v);
  const sx = linearScale(0, xMax, x0, x1);
  const sy = linearScale(0, vMax || 1, y1, y0);
  const xTicks = xMax >= 48 ?
    Array.from({ length: Math.floor(xMax / 12) + 1 }, (_, i) => i * 12) :
    niceTicks(0, xMax);

  const parts: string[] = [];
  parts.push(axes(x0, y0, x1, y1, sx, sy, xTicks, niceTicks(0, vMax || 1),
                  xLabel, yLabel));
  traces.forEach((t, i) => {
    parts.push(`<polyline class="trace" points="${polylinePoints(t.hours, pick(t), sx, sy)}" ` +
               `fill="none" stroke="${TRACK_COLORS[i % TRACK_COLORS.length]}" stroke-width="2"/>`);
  });
  return parts.join('\n');
}

/** Two stacked panels over shared hours: battery on top, centrality below. */
export function renderBetweenness(path: string, ids?: [number, number, number]): string {
  const rows = readCsv(path);
  requireColumns(rows, ['tick', 'phone_id', 'battery', 'betweenness'], path);
  const tracked = ids ?? pickTrackedIds(rows, path);
  const traces = collectTraces(rows, tracked, path);

  const panelH = (H - MARGIN.top - MARGIN.bottom - GAP) / 2;
  const top0 = MARGIN.top;
  const top1 = MARGIN.top + panelH;
  const bot0 = top1 + GAP;
  const bot1 = bot0 + panelH;

  const parts: string[] = [openSvg(W, H)];
  parts.push(text(W / 2, 24, 'tracked phones: battery and relay centrality',
                  'text-anchor="middle" font-size="15" fill="#111"'));
  parts.push(`<g class="panel-battery">`);
  parts.push(panel(traces, (t) => t.battery, top0, top1, 'battery', ''));
  parts.push(`</g>`);
  parts.push(`<g class="panel-betweenness">`);
  parts.push(panel(traces, (t) => t.betweenness, bot0, bot1,
                   'betweenness', 'hours since outage'));
  parts.push(`</g>`);

  let lx = MARGIN.left + 10;
  traces.forEach((t, i) => {
    const color = TRACK_COLORS[i % TRACK_COLORS.length];
    parts.push(`<line x1="${lx}" y1="${top0 + 10}" x2="${lx + 22}" y2="${top0 + 10}" ` +
               `stroke="${color}" stroke-width="3"/>`);
    parts.push(text(lx + 28, top0 + 14,
                    `phone ${t.id} (${TRACK_LABELS[i] ?? 'tracked'})`, 'fill="#333"'));
    lx += 200;
  });

  parts.push('</svg>\n');
  return parts.join('\n');
}
