import { ResultRow } from "./csv.js";

/** Mean and standard deviation of one metric over a cell's trials. */
export interface CellStats {
  x: number;
  mean: number;
  std: number;
  trials: number;
}

export interface Series {
  name: string;
  points: CellStats[];
}

export type Metric = "l2_error" | "F_err" | "F_hat";

function mean(values: number[]): number {
  return values.reduce((a, b) => a + b, 0) / values.length;
}

function std(values: number[]): number {
  if (values.length < 2) return 0;
  const m = mean(values);
  return Math.sqrt(values.reduce((a, b) => a + (b - m) ** 2, 0) / (values.length - 1));
}

/**
 * Group rows into series (one per `seriesKey` value) of per-cell
 * mean/std points along `xKey`. Rows whose metric is blank (refused
 * cells) are dropped; cells with no usable trials produce no point.
 */
export function aggregate(
  rows: ResultRow[],
  seriesKey: (r: ResultRow) => string,
  xKey: (r: ResultRow) => number,
  metric: Metric,
): Series[] {
  const groups = new Map<string, Map<number, number[]>>();
  for (const row of rows) {
    const value = row[metric];
    if (value === null) continue;
    const name = seriesKey(row);
    const x = xKey(row);
    let cells = groups.get(name);
    if (!cells) groups.set(name, (cells = new Map()));
    let values = cells.get(x);
    if (!values) cells.set(x, (values = []));
    values.push(value);
  }
  const series: Series[] = [];
  for (const [name, cells] of [...groups.entries()].sort()) {
    const points = [...cells.entries()]
      .sort((a, b) => a[0] - b[0])
      .map(([x, values]) => ({ x, mean: mean(values), std: std(values), trials: values.length }));
    series.push({ name, points });
  }
  return series;
}

/** Like aggregate, but the point value is the trial std dev itself
 *  (spread-of-estimates figures); the envelope is zero. */
export function aggregateStd(
  rows: ResultRow[],
  seriesKey: (r: ResultRow) => string,
  xKey: (r: ResultRow) => number,
  metric: Metric,
): Series[] {
  return aggregate(rows, seriesKey, xKey, metric).map((s) => ({
    name: s.name,
    points: s.points.map((p) => ({ x: p.x, mean: p.std, std: 0, trials: p.trials })),
  }));
}
