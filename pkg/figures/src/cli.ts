import { mkdirSync, writeFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { pathToFileURL } from 'node:url';
import { parseArgs } from 'node:util';

import { renderBetweenness } from './betweenness.js';
import { DiagnosticError } from './csv.js';
import { renderPhase } from './phase.js';
import { renderGini, renderParticipation } from './timeseries.js';

const USAGE = `usage:
  cli.js participation --mesh timeseries.csv --sos timeseries.csv --out fig.svg
  cli.js gini          --mesh timeseries.csv --sos timeseries.csv --out fig.svg
  cli.js betweenness   --input betweenness.csv --out fig.svg [--ids a,b,c]
  cli.js phase         --input phase.csv --out fig.svg
  cli.js all           --mesh ts.csv --sos ts.csv --betweenness b.csv \\
                       --phase phase.csv --out-dir figs/

participation and gini accept either input alone (single curve, no band).`;

function writeSvg(path: string, svg: string): void {
  mkdirSync(dirname(path) || '.', { recursive: true });
  writeFileSync(path, svg);
  console.log(`wrote ${path}`);
}

function need(value: string | undefined, flag: string): string {
  if (!value) {
    console.error(`missing required flag ${flag}\n\n${USAGE}`);
    process.exit(2);
  }
  return value;
}

function parseIds(raw: string): [number, number, number] {
  const ids = raw.split(',').map((s) => Number(s.trim()));
  if (ids.length !== 3 || ids.some((v) => !Number.isInteger(v) || v < 0)) {
    throw new DiagnosticError(`--ids wants three phone ids like "3,41,7", got "${raw}"`);
  }
  return ids as [number, number, number];
}

export function main(argv: string[]): void {
  const [command, ...rest] = argv;
  const { values } = parseArgs({
    args: rest,
    options: {
      mesh: { type: 'string' },
      sos: { type: 'string' },
      input: { type: 'string' },
      ids: { type: 'string' },
      out: { type: 'string' },
      betweenness: { type: 'string' },
      phase: { type: 'string' },
      'out-dir': { type: 'string' },
    },
  });

  switch (command) {
    case 'participation':
    case 'gini': {
      if (!values.mesh && !values.sos) {
        console.error(`need --mesh and/or --sos\n\n${USAGE}`);
        process.exit(2);
      }
      const render = command === 'participation' ? renderParticipation : renderGini;
      const { svg, warning } = render(values.mesh, values.sos);
      if (warning) console.error(`warning: ${warning}`);
      writeSvg(need(values.out, '--out'), svg);
      break;
    }
    case 'betweenness': {
      const ids = values.ids === undefined ? undefined : parseIds(values.ids);
      writeSvg(need(values.out, '--out'),
               renderBetweenness(need(values.input, '--input'), ids));
      break;
    }
    case 'phase': {
      writeSvg(need(values.out, '--out'), renderPhase(need(values.input, '--input')));
      break;
    }
    case 'all': {
      const dir = need(values['out-dir'], '--out-dir');
      const mesh = values.mesh;
      const sos = values.sos;
      if (!mesh && !sos) {
        console.error(`need --mesh and/or --sos\n\n${USAGE}`);
        process.exit(2);
      }
      const part = renderParticipation(mesh, sos);
      if (part.warning) console.error(`warning: ${part.warning}`);
      writeSvg(join(dir, 'participation.svg'), part.svg);
      writeSvg(join(dir, 'gini.svg'), renderGini(mesh, sos).svg);
      writeSvg(join(dir, 'betweenness.svg'),
               renderBetweenness(need(values.betweenness, '--betweenness')));
      writeSvg(join(dir, 'phase.svg'), renderPhase(need(values.phase, '--phase')));
      break;
    }
    case undefined:
    case 'help':
    case '--help':
    case '-h':
      console.log(USAGE);
      break;
    default:
      console.error(`unknown command "${command}"\n\n${USAGE}`);
      process.exit(2);
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;

if (invokedDirectly) {
  try {
    main(process.argv.slice(2));
  } catch (err) {
    if (err instanceof DiagnosticError) {
      console.error(`error: ${err.message}`);
      process.exit(1);
    }
    throw err;
  }
}
