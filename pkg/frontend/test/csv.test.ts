import { describe, expect, test } from 'vitest';

import { CSV_FIELDS, parseSweepCsv } from '../src/csv.js';

const HEADER = CSV_FIELDS.join(',');

function row(snr: number, fer: number, visits: number, mllb = fer): string {
  return [snr, 100000, Math.round(fer * 100000), fer, visits, 1, Math.round(mllb * 100000), mllb, 'nan', 'nan', 0, 1, 100000].join(',');
}

describe('parseSweepCsv', () => {
  test('parses a well-formed sweep', () => {
    const text = [HEADER, row(3.0, 1.4e-4, 2.1), row(2.5, 1.2e-3, 3.9)].join('\n');
    const recs = parseSweepCsv(text);
    expect(recs).toHaveLength(2);
    expect(recs[0].snr_db).toBe(2.5); // sorted ascending
    expect(recs[1].fer).toBeCloseTo(1.4e-4, 10);
    expect(recs[1].mean_visits_over_n).toBeCloseTo(2.1, 10);
  });

  test('rejects a wrong header naming the column', () => {
    const bad = [HEADER.replace('ml_lb_fer', 'mlb'), row(3, 1e-3, 2)].join('\n');
    expect(() => parseSweepCsv(bad, 'x.csv')).toThrow(/ml_lb_fer/);
  });

  test('rejects extra columns', () => {
    const bad = [`${HEADER},extra`, row(3, 1e-3, 2) + ',7'].join('\n');
    expect(() => parseSweepCsv(bad)).toThrow(/extra column/);
  });

  test('rejects ragged rows and empty files', () => {
    expect(() => parseSweepCsv([HEADER, '1,2,3'].join('\n'))).toThrow(/cells/);
    expect(() => parseSweepCsv(HEADER)).toThrow(/at least one record/);
  });
});
