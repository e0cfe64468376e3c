/**
 * Two-panel SVG figure: normalized average complexity (top) and frame
 * error rate (bottom) against Eb/N0, both on log axes, sharing the
 * horizontal scale. One polyline+marker set per series, legend below.
 *
 * Pure string construction: output depends only on the inputs, so
 * figures are reproducible byte for byte.
 */

import { SweepRecord } from './csv.js';

export type Panel = 'fer' | 'complexity';

export interface Series {
  label: string;
  panel: Panel;
  /** which CSV column feeds the y values */
  field: 'fer' | 'ml_lb_fer' | 'mean_visits_over_n';
  records: SweepRecord[];
}

export interface RefPoint {
  panel: Panel;
  snrDb: number;
  value: number;
  label: string;
}

export interface FigureOptions {
  width?: number;
  title?: string;
}

const COLORS = ['#d62728', '#1f77b4', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b', '#17becf'];
const MARKERS = ['circle', 'square', 'triangle', 'diamond', 'cross'] as const;

interface Rect {
  x0: number;
  y0: number;
  w: number;
  h: number;
}

function niceLogTicks(lo: number, hi: number): number[] {
  const out: number[] = [];
  for (let e = Math.floor(Math.log10(lo)); e <= Math.ceil(Math.log10(hi)); e++) {
    out.push(10 ** e);
  }
  return out.filter((v) => v >= lo / 1.0001 && v <= hi * 1.0001);
}

function xTicks(lo: number, hi: number): number[] {
  const span = hi - lo;
  const step = span <= 1.5 ? 0.25 : span <= 3.5 ? 0.5 : 1.0;
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-9; v += step) {
    out.push(Number(v.toFixed(4)));
  }
  return out;
}

function fmtTick(v: number): string {
  if (v >= 0.01 && v < 10000) {
    return String(Number(v.toPrecision(4)));
  }
  const e = Math.round(Math.log10(v));
  return `1e${e}`;
}

function marker(kind: (typeof MARKERS)[number], x: number, y: number, color: string): string {
  const s = 3.2;
  const p = (v: number) => v.toFixed(2);
  switch (kind) {
    case 'circle':
      return `<circle cx="${p(x)}" cy="${p(y)}" r="${s}" fill="none" stroke="${color}"/>`;
    case 'square':
      return `<rect x="${p(x - s)}" y="${p(y - s)}" width="${p(2 * s)}" height="${p(2 * s)}" fill="none" stroke="${color}"/>`;
    case 'triangle':
      return `<polygon points="${p(x)},${p(y - s)} ${p(x - s)},${p(y + s)} ${p(x + s)},${p(y + s)}" fill="none" stroke="${color}"/>`;
    case 'diamond':
      return `<polygon points="${p(x)},${p(y - s)} ${p(x + s)},${p(y)} ${p(x)},${p(y + s)} ${p(x - s)},${p(y)}" fill="none" stroke="${color}"/>`;
    case 'cross':
      return (
        `<line x1="${p(x - s)}" y1="${p(y)}" x2="${p(x + s)}" y2="${p(y)}" stroke="${color}"/>` +
        `<line x1="${p(x)}" y1="${p(y - s)}" x2="${p(x)}" y2="${p(y + s)}" stroke="${color}"/>`
      );
  }
}

export function seriesPoints(s: Series): Array<[number, number]> {
  return s.records
    .map((r): [number, number] => [r.snr_db, r[s.field]])
    .filter(([, y]) => Number.isFinite(y) && y > 0);
}

export function renderFigure(series: Series[], refs: RefPoint[] = [], opts: FigureOptions = {}): string {
  if (series.length === 0) {
    throw new Error('no series to plot');
  }
  for (const s of series) {
    if (seriesPoints(s).length === 0) {
      throw new Error(`series "${s.label}" has no positive finite points for ${s.field}`);
    }
  }
  const width = opts.width ?? 720;
  const mLeft = 78;
  const mRight = 24;
  const mTop = opts.title ? 46 : 24;
  const panelGap = 46;
  const cplxH = 190;
  const ferH = 260;
  const legendRowH = 18;
  const legendRows = series.length;
  const legendH = 16 + legendRows * legendRowH;
  const xAxisH = 40;
  const height = mTop + cplxH + panelGap + ferH + xAxisH + legendH;

  const allX = series.flatMap((s) => seriesPoints(s).map(([x]) => x));
  const xLo = Math.min(...allX, ...refs.map((r) => r.snrDb));
  const xHi = Math.max(...allX, ...refs.map((r) => r.snrDb));
  const xPad = xHi > xLo ? 0.04 * (xHi - xLo) : 0.5;
  const xDom: [number, number] = [xLo - xPad, xHi + xPad];

  const panelRect: Record<Panel, Rect> = {
    complexity: { x0: mLeft, y0: mTop, w: width - mLeft - mRight, h: cplxH },
    fer: { x0: mLeft, y0: mTop + cplxH + panelGap, w: width - mLeft - mRight, h: ferH },
  };

  const yDom: Record<Panel, [number, number]> = { fer: [1, 1], complexity: [1, 1] };
  for (const panel of ['fer', 'complexity'] as Panel[]) {
    const ys = series
      .filter((s) => s.panel === panel)
      .flatMap((s) => seriesPoints(s).map(([, y]) => y))
      .concat(refs.filter((r) => r.panel === panel).map((r) => r.value));
    if (ys.length === 0) {
      yDom[panel] = panel === 'fer' ? [1e-5, 1] : [1, 10];
      continue;
    }
    const lo = Math.min(...ys);
    const hi = Math.max(...ys);
    yDom[panel] = [10 ** Math.floor(Math.log10(lo) - 1e-12), 10 ** Math.ceil(Math.log10(hi) + 1e-12)];
    if (yDom[panel][0] === yDom[panel][1]) {
      yDom[panel] = [yDom[panel][0] / 10, yDom[panel][1] * 10];
    }
  }

  const xOf = (v: number, r: Rect) => r.x0 + ((v - xDom[0]) / (xDom[1] - xDom[0])) * r.w;
  const yOf = (v: number, r: Rect, dom: [number, number]) =>
    r.y0 + r.h - ((Math.log10(v) - Math.log10(dom[0])) / (Math.log10(dom[1]) - Math.log10(dom[0]))) * r.h;

  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif" font-size="11">`,
  );
  out.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  if (opts.title) {
    out.push(
      `<text x="${width / 2}" y="22" text-anchor="middle" font-size="14">${escapeXml(opts.title)}</text>`,
    );
  }

  const axisLabel: Record<Panel, string> = {
    complexity: 'E[X] / χ_SC',
    fer: 'FER',
  };

  for (const panel of ['complexity', 'fer'] as Panel[]) {
    const r = panelRect[panel];
    const dom = yDom[panel];
    out.push(`<rect x="${r.x0}" y="${r.y0}" width="${r.w}" height="${r.h}" fill="none" stroke="#444"/>`);
    for (const t of niceLogTicks(dom[0], dom[1])) {
      const y = yOf(t, r, dom);
      out.push(
        `<line x1="${r.x0}" y1="${y.toFixed(2)}" x2="${r.x0 + r.w}" y2="${y.toFixed(2)}" stroke="#ddd"/>`,
      );
      out.push(
        `<text x="${r.x0 - 6}" y="${(y + 3.5).toFixed(2)}" text-anchor="end">${fmtTick(t)}</text>`,
      );
    }
    for (const t of xTicks(xDom[0], xDom[1])) {
      const x = xOf(t, r);
      out.push(
        `<line x1="${x.toFixed(2)}" y1="${r.y0}" x2="${x.toFixed(2)}" y2="${r.y0 + r.h}" stroke="#eee"/>`,
      );
      if (panel === 'fer') {
        out.push(
          `<text x="${x.toFixed(2)}" y="${r.y0 + r.h + 16}" text-anchor="middle">${t}</text>`,
        );
      }
    }
    out.push(
      `<text transform="rotate(-90 ${r.x0 - 52} ${r.y0 + r.h / 2})" x="${r.x0 - 52}" ` +
        `y="${r.y0 + r.h / 2}" text-anchor="middle">${axisLabel[panel]}</text>`,
    );
  }
  const ferRect = panelRect.fer;
  out.push(
    `<text x="${ferRect.x0 + ferRect.w / 2}" y="${ferRect.y0 + ferRect.h + 34}" ` +
      `text-anchor="middle">Eb/N0 in dB</text>`,
  );

  series.forEach((s, idx) => {
    const color = COLORS[idx % COLORS.length];
    const mk = MARKERS[idx % MARKERS.length];
    const r = panelRect[s.panel];
    const dom = yDom[s.panel];
    const pts = seriesPoints(s).map(
      ([x, y]) => [xOf(x, r), yOf(y, r, dom)] as [number, number],
    );
    const path = pts.map(([x, y]) => `${x.toFixed(2)},${y.toFixed(2)}`).join(' ');
    out.push(`<polyline points="${path}" fill="none" stroke="${color}" stroke-width="1.4"/>`);
    for (const [x, y] of pts) {
      out.push(marker(mk, x, y, color));
    }
  });

  refs.forEach((ref) => {
    const r = panelRect[ref.panel];
    const dom = yDom[ref.panel];
    const x = xOf(ref.snrDb, r);
    const y = yOf(ref.value, r, dom);
    out.push(
      `<line x1="${(x - 5).toFixed(2)}" y1="${y.toFixed(2)}" x2="${(x + 5).toFixed(2)}" ` +
        `y2="${y.toFixed(2)}" stroke="#333" stroke-dasharray="2,2"/>`,
    );
    out.push(
      `<line x1="${x.toFixed(2)}" y1="${(y - 5).toFixed(2)}" x2="${x.toFixed(2)}" ` +
        `y2="${(y + 5).toFixed(2)}" stroke="#333" stroke-dasharray="2,2"/>`,
    );
    out.push(`<text x="${(x + 7).toFixed(2)}" y="${(y - 4).toFixed(2)}">${escapeXml(ref.label)}</text>`);
  });

  const legendY = mTop + cplxH + panelGap + ferH + xAxisH;
  series.forEach((s, idx) => {
    const color = COLORS[idx % COLORS.length];
    const mk = MARKERS[idx % MARKERS.length];
    const y = legendY + idx * legendRowH + 8;
    out.push(`<line x1="${mLeft}" y1="${y}" x2="${mLeft + 26}" y2="${y}" stroke="${color}" stroke-width="1.4"/>`);
    out.push(marker(mk, mLeft + 13, y, color));
    const panelTag = s.panel === 'fer' ? (s.field === 'ml_lb_fer' ? 'ML-LB' : 'FER') : 'E[X]/N';
    out.push(`<text x="${mLeft + 34}" y="${y + 3.5}">${escapeXml(s.label)} (${panelTag})</text>`);
  });

  out.push('</svg>');
  return out.join('\n');
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}
