import assert from 'node:assert/strict';
import { spawnSync } from 'node:child_process';
import { mkdtempSync, readFileSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { fileURLToPath } from 'node:url';
import test from 'node:test';
import { pickTrackedIds, renderBetweenness } from '../src/betweenness.js';
import { DiagnosticError, readCsv, requireColumns } from '../src/csv.js';
import { averageCells, renderPhase } from '../src/phase.js';
import { diverging } from '../src/svg.js';
import { renderGini, renderParticipation } from '../src/timeseries.js';
const CLI = fileURLToPath(new URL('../../dist/cli.js', import.meta.url));
const dir = mkdtempSync(join(tmpdir(), 'sossim-figs-'));
function tmpCsv(name, content) {
    const path = join(dir, name);
    writeFileSync(path, content);
    return path;
}
const TS_HEADER = 'tick,hour,participation_alive,participation_connected,gini_alive,' +
    'mean_battery,n_edges,n_components,msgs_delivered,msgs_pending,' +
    'msgs_dropped,first_death_tick,protocol';
function timeseries(protocol, alive, gini) {
    const lines = [TS_HEADER];
    alive.forEach((a, i) => {
        lines.push(`${i * 15},${i * 0.25},${a},${a},${gini[i]},900,10,1,0,0,0,,${protocol}`);
    });
    return lines.join('\n') + '\n';
}
const MESH_TS = tmpCsv('mesh.csv', timeseries('mesh', [1.0, 0.8, 0.5, 0.2], [0.12, 0.2, 0.3, 0.4]));
const SOS_TS = tmpCsv('sos.csv', timeseries('sos', [1.0, 1.0, 0.99, 0.97], [0.12, 0.12, 0.11, 0.11]));
const BC_CSV = tmpCsv('betweenness.csv', [
    'tick,phone_id,battery,betweenness',
    '0,0,500,0.1', '0,1,900,0.5', '0,2,700,0.2', '0,3,1200,0.0',
    '60,0,480,0.1', '60,1,850,0.4', '60,2,690,0.3', '60,3,1160,0.1',
    '120,0,460,0.0', '120,1,800,0.2', '120,2,680,0.3', '120,3,1120,0.4',
].join('\n') + '\n');
const PHASE_HEADER = 'n_phones,density,msgs_per_period,seed,longevity_mesh_h,longevity_sos_h,diff_h';
const PHASE_CSV = tmpCsv('phase.csv', [
    PHASE_HEADER,
    '100,0.16,1,1,70,71,1.0',
    '100,0.16,1,2,69,72,3.0',
    '200,0.32,1,1,60,70,10.0',
    '200,0.32,1,2,58,72,14.0',
    '100,0.16,10,1,50,46,-4.0',
    '100,0.16,10,2,52,46,-6.0',
    '200,0.32,10,1,40,40,0.0',
    '200,0.32,10,2,42,42,0.0',
    '100,0.16,1,mean,69.5,71.5,999.0',
].join('\n') + '\n');
test('readCsv parses rows and requireColumns names what is missing', () => {
    const rows = readCsv(MESH_TS);
    assert.equal(rows.length, 4);
    assert.equal(rows[0]['protocol'], 'mesh');
    assert.throws(() => requireColumns(rows, ['hour', 'no_such_column'], 'x.csv'), (err) => err instanceof DiagnosticError &&
        err.message.includes('no_such_column'));
    assert.throws(() => readCsv(join(dir, 'absent.csv')), DiagnosticError);
});
test('participation draws both curves and the difference band', () => {
    const { svg, warning } = renderParticipation(MESH_TS, SOS_TS);
    assert.equal(warning, undefined);
    assert.match(svg, /^<svg /);
    assert.equal((svg.match(/class="curve"/g) ?? []).length, 2);
    assert.equal((svg.match(/class="band"/g) ?? []).length, 1);
    assert.match(svg, /phones alive over time/);
});
test('participation falls back to a single curve with a warning', () => {
    const { svg, warning } = renderParticipation(MESH_TS, undefined);
    assert.ok(warning && warning.includes('mesh'));
    assert.equal((svg.match(/class="curve"/g) ?? []).length, 1);
    assert.doesNotMatch(svg, /class="band"/);
});
test('a missing metric column is a diagnostic, not a blank plot', () => {
    const bad = tmpCsv('bad.csv', 'tick,hour\n0,0\n15,0.25\n');
    assert.throws(() => renderGini(bad, undefined), (err) => err instanceof DiagnosticError &&
        err.message.includes('gini_alive'));
});
test('tracked phones default to lowest, median, highest starting battery', () => {
    const rows = readCsv(BC_CSV);
    assert.deepEqual(pickTrackedIds(rows, BC_CSV), [0, 1, 3]);
});
test('betweenness renders two stacked panels with three traces each', () => {
    const svg = renderBetweenness(BC_CSV);
    assert.equal((svg.match(/class="trace"/g) ?? []).length, 6);
    assert.match(svg, /class="panel-battery"/);
    assert.match(svg, /class="panel-betweenness"/);
    assert.match(svg, /phone 3/);
});
test('betweenness honors an explicit id override', () => {
    const svg = renderBetweenness(BC_CSV, [2, 0, 1]);
    assert.match(svg, /phone 2 \(lowest start\)/);
});
test('phase averages per-seed rows and ignores aggregate rows', () => {
    const cells = averageCells(readCsv(PHASE_CSV), PHASE_CSV);
    const byKey = new Map(cells.map((c) => [`${c.density}|${c.msgs}`, c.diff]));
    assert.equal(byKey.get('0.16|1'), 2.0);
    assert.equal(byKey.get('0.32|1'), 12.0);
    assert.equal(byKey.get('0.16|10'), -5.0);
    assert.equal(byKey.get('0.32|10'), 0.0);
});
test('phase heatmap has one tagged cell per grid point, signed colors', () => {
    const svg = renderPhase(PHASE_CSV);
    assert.equal((svg.match(/class="cell"/g) ?? []).length, 4);
    assert.doesNotMatch(svg, /999/);
    assert.match(svg, /\+2\.0/);
    assert.match(svg, /-5\.0/);
    // advantage cells green-ish, deficit cells red-ish, zero neutral
    assert.match(svg, new RegExp(`fill="${diverging(1)}"`));
    assert.match(svg, new RegExp(`fill="${diverging(-5 / 12)}"`));
    assert.match(svg, new RegExp(`fill="${diverging(0)}"`));
});
test('diverging ramp endpoints and midpoint', () => {
    assert.equal(diverging(0), '#f7f7f7');
    assert.equal(diverging(1), '#1b8449');
    assert.equal(diverging(-1), '#c0392b');
});
test('an all-zero phase grid renders uniformly neutral', () => {
    const flat = tmpCsv('flat.csv', [
        PHASE_HEADER,
        '100,0.16,1,1,72,72,0.0',
        '200,0.32,1,1,72,72,0.0',
    ].join('\n') + '\n');
    const svg = renderPhase(flat);
    const fills = [...svg.matchAll(/class="cell"[^/]*fill="([^"]+)"/g)].map((m) => m[1]);
    assert.equal(fills.length, 2);
    assert.ok(fills.every((f) => f === diverging(0)));
});
test('a single-cell phase grid still renders', () => {
    const one = tmpCsv('one.csv', `${PHASE_HEADER}\n500,0.8,1,1,20,60,40.0\n`);
    const svg = renderPhase(one);
    assert.equal((svg.match(/class="cell"/g) ?? []).length, 1);
    assert.match(svg, /\+40\.0/);
});
test('cli renders a figure end to end', () => {
    const out = join(dir, 'cli-phase.svg');
    const proc = spawnSync('node', [CLI, 'phase', '--input', PHASE_CSV, '--out', out]);
    assert.equal(proc.status, 0, proc.stderr.toString());
    const svg = readFileSync(out, 'utf8');
    assert.match(svg, /^<svg /);
});
test('cli exits nonzero with a diagnostic on a broken input', () => {
    const bad = tmpCsv('cli-bad.csv', 'tick,hour\n0,0\n');
    const proc = spawnSync('node', [CLI, 'gini', '--mesh', bad, '--out', join(dir, 'nope.svg')]);
    assert.equal(proc.status, 1);
    assert.match(proc.stderr.toString(), /gini_alive/);
});
test('cli warns but succeeds on a single-protocol comparison', () => {
    const out = join(dir, 'cli-single.svg');
    const proc = spawnSync('node', [CLI, 'participation', '--sos', SOS_TS, '--out', out]);
    assert.equal(proc.status, 0, proc.stderr.toString());
    assert.match(proc.stderr.toString(), /single curve/);
});
