#!/usr/bin/env node
/**
 * plot: render the two-panel FER/complexity figure from sweep CSVs.
 *
 *   plot --csv sweep.csv:SC --csv scos.csv:SCOS --csv scos.csv:ML-LB:mllb \
 *        --out figure.svg [--title "..."] [--ref fer:3.0:1.38e-4:paper]
 *
 * A plain PATH:LABEL entry contributes a FER series and a complexity
 * series; a trailing field tag (fer | complexity | mllb) narrows it to
 * one panel. Exit code 0 on success, 2 on bad arguments or inputs.
 */

import { readFileSync, writeFileSync } from 'node:fs';

import { parseSweepCsv } from './csv.js';
import { Panel, RefPoint, Series, renderFigure } from './figure.js';

interface CsvArg {
  path: string;
  label: string;
  field: 'both' | 'fer' | 'complexity' | 'mllb';
}

function parseArgs(argv: string[]): { csvs: CsvArg[]; out: string; title?: string; refs: RefPoint[] } {
  const csvs: CsvArg[] = [];
  const refs: RefPoint[] = [];
  let out = '';
  let title: string | undefined;
  for (let k = 0; k < argv.length; k++) {
    const arg = argv[k];
    const next = () => {
      k++;
      if (k >= argv.length) throw new Error(`missing value after ${arg}`);
      return argv[k];
    };
    if (arg === '--csv') {
      const parts = next().split(':');
      const path = parts[0];
      const label = parts[1] ?? path.replace(/.*\//, '').replace(/\.csv$/, '');
      const field = (parts[2] ?? 'both') as CsvArg['field'];
      if (!['both', 'fer', 'complexity', 'mllb'].includes(field)) {
        throw new Error(`unknown series field "${field}" (use fer, complexity or mllb)`);
      }
      csvs.push({ path, label, field });
    } else if (arg === '--out') {
      out = next();
    } else if (arg === '--title') {
      title = next();
    } else if (arg === '--ref') {
      const parts = next().split(':');
      if (parts.length !== 4 || (parts[0] !== 'fer' && parts[0] !== 'complexity')) {
        throw new Error('expected --ref PANEL:SNR:VALUE:LABEL with PANEL fer|complexity');
      }
      refs.push({
        panel: parts[0] as Panel,
        snrDb: Number(parts[1]),
        value: Number(parts[2]),
        label: parts[3],
      });
    } else {
      throw new Error(`unknown argument ${arg}`);
    }
  }
  if (csvs.length === 0) throw new Error('at least one --csv PATH[:LABEL[:FIELD]] is required');
  if (!out) throw new Error('--out FILE.svg is required');
  return { csvs, out, title, refs };
}

export function buildSeries(csvs: CsvArg[], read: (p: string) => string): Series[] {
  const series: Series[] = [];
  for (const c of csvs) {
    const records = parseSweepCsv(read(c.path), c.path);
    if (c.field === 'both' || c.field === 'complexity') {
      series.push({ label: c.label, panel: 'complexity', field: 'mean_visits_over_n', records });
    }
    if (c.field === 'both' || c.field === 'fer') {
      series.push({ label: c.label, panel: 'fer', field: 'fer', records });
    }
    if (c.field === 'mllb') {
      series.push({ label: c.label, panel: 'fer', field: 'ml_lb_fer', records });
    }
  }
  return series;
}

export function main(argv: string[]): number {
  try {
    const { csvs, out, title, refs } = parseArgs(argv);
    const series = buildSeries(csvs, (p) => readFileSync(p, 'utf8'));
    const svg = renderFigure(series, refs, { title });
    writeFileSync(out, svg);
    console.log(`wrote ${out} (${series.length} series)`);
    return 0;
  } catch (err) {
    console.error(`plot: ${err instanceof Error ? err.message : err}`);
    return 2;
  }
}

if (process.argv[1] && /cli\.(js|ts)$/.test(process.argv[1])) {
  process.exit(main(process.argv.slice(2)));
}
