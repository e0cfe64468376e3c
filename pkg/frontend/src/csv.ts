/**
 * Reader for the simulator's fixed-schema sweep CSV.
 *
 * The schema is owned by the Python harness; this module validates the
 * header verbatim and refuses files that do not match, naming the
 * offending column.
 */

export const CSV_FIELDS = [
  'snr_db',
  'frames',
  'errors',
  'fer',
  'mean_visits_over_n',
  'ml_certified_fraction',
  'ml_lb_errors',
  'ml_lb_fer',
  'mean_vset_over_n',
  'lemma1_ok_fraction',
  'vset_excluded',
  'profile_seed',
  'profile_trials',
] as const;

export type SweepField = (typeof CSV_FIELDS)[number];

export type SweepRecord = Record<SweepField, number>;

export function parseSweepCsv(text: string, source = '<csv>'): SweepRecord[] {
  const lines = text.split(/\r?\n/).filter((l) => l.trim().length > 0);
  if (lines.length < 2) {
    throw new Error(`${source}: expected a header and at least one record`);
  }
  const header = lines[0].split(',').map((h) => h.trim());
  for (let k = 0; k < CSV_FIELDS.length; k++) {
    if (header[k] !== CSV_FIELDS[k]) {
      throw new Error(
        `${source}: schema mismatch at column ${k + 1}: ` +
          `expected "${CSV_FIELDS[k]}", found "${header[k] ?? '<missing>'}"`,
      );
    }
  }
  if (header.length !== CSV_FIELDS.length) {
    throw new Error(`${source}: unexpected extra column "${header[CSV_FIELDS.length]}"`);
  }
  const records: SweepRecord[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(',');
    if (cells.length !== CSV_FIELDS.length) {
      throw new Error(`${source}: row with ${cells.length} cells: "${line}"`);
    }
    const rec = {} as SweepRecord;
    CSV_FIELDS.forEach((f, k) => {
      rec[f] = Number(cells[k]);
    });
    records.push(rec);
  }
  records.sort((a, b) => a.snr_db - b.snr_db);
  return records;
}
