import { ResultRow } from "./csv.js";
import { Series, aggregate, aggregateStd } from "./aggregate.js";

export type FigureId = "fig3" | "fig4" | "fig5" | "fig6";

export const FIGURE_IDS: FigureId[] = ["fig3", "fig4", "fig5", "fig6"];

export type AxisScale = "linear" | "log";

export interface Panel {
  title: string;
  xLabel: string;
  yLabel: string;
  xScale: AxisScale;
  yScale: AxisScale;
  envelope: boolean;
  series: Series[];
}

export interface Figure {
  id: FigureId;
  panels: Panel[];
}

export interface FigureSpec {
  id: FigureId;
  csvPaths: string[];
  outPath: string;
}

function distinct<T>(rows: ResultRow[], key: (r: ResultRow) => T): T[] {
  return [...new Set(rows.map(key))];
}

/** Rows belonging to a sweep over `key`: those sharing every other cell
 *  coordinate with at least one row at a different `key` value. We keep
 *  it simple: a row participates if the full input holds >1 distinct
 *  values of `key` for its protocol+model. */
function sweepRows(rows: ResultRow[], key: (r: ResultRow) => number): ResultRow[] {
  const out: ResultRow[] = [];
  const byGroup = new Map<string, ResultRow[]>();
  for (const r of rows) {
    const g = `${r.protocol}|${r.model}`;
    (byGroup.get(g) ?? byGroup.set(g, []).get(g)!).push(r);
  }
  for (const group of byGroup.values()) {
    if (distinct(group, key).length > 1) out.push(...group);
  }
  return out;
}

/** Rows that sweep `sweep` while holding `fixed` constant: keep a row
 *  iff, among rows of its protocol+model sharing its `fixed` value,
 *  more than one `sweep` value occurs. */
function sweepAtFixed(
  rows: ResultRow[],
  sweep: (r: ResultRow) => number,
  fixed: (r: ResultRow) => number,
): ResultRow[] {
  const seen = new Map<string, Set<number>>();
  const keyOf = (r: ResultRow) => `${r.protocol}|${r.model}|${fixed(r)}`;
  for (const r of rows) {
    const k = keyOf(r);
    (seen.get(k) ?? seen.set(k, new Set()).get(k)!).add(sweep(r));
  }
  return rows.filter((r) => seen.get(keyOf(r))!.size > 1);
}

/** Assemble the plotted series for one figure. Pure function of the
 *  parsed rows; rendering happens separately. */
export function buildFigure(id: FigureId, rows: ResultRow[]): Figure {
  switch (id) {
    case "fig3": {
      // a combined CSV may hold a shots sweep (fixed F) and a fidelity
      // sweep (fixed shots); route each row to the panel it sweeps
      const byNs = sweepAtFixed(rows, (r) => r.Ns, (r) => r.F_true);
      const byF = sweepAtFixed(rows, (r) => r.F_true, (r) => r.Ns);
      const panels: Panel[] = [];
      if (byNs.length > 0) {
        panels.push(
          panel("estimation error vs shots", "shots", "l2 error", "log", "log",
            aggregate(byNs, (r) => r.protocol, (r) => r.Ns, "l2_error")),
          panel("fidelity error vs shots", "shots", "|dF|", "log", "log",
            aggregate(byNs, (r) => r.protocol, (r) => r.Ns, "F_err")),
        );
      }
      if (byF.length > 0) {
        panels.push(
          panel("estimation error vs fidelity", "F", "l2 error", "linear", "log",
            aggregate(byF, (r) => r.protocol, (r) => r.F_true, "l2_error")),
          panel("fidelity error vs fidelity", "F", "|dF|", "linear", "log",
            aggregate(byF, (r) => r.protocol, (r) => r.F_true, "F_err")),
        );
      }
      if (panels.length === 0) throw new Error("fig3: no Ns or F sweep found in CSV");
      return { id, panels };
    }
    case "fig4": {
      const swept = sweepRows(rows, (r) => r.n);
      if (swept.length === 0) throw new Error("fig4: no n sweep found in CSV");
      return {
        id,
        panels: [
          panel("estimation error vs system size", "n", "l2 error", "linear", "log",
            aggregate(swept, (r) => r.protocol, (r) => r.n, "l2_error")),
        ],
      };
    }
    case "fig5": {
      const swept = sweepRows(rows, (r) => r.n);
      if (swept.length === 0) throw new Error("fig5: no n sweep found in CSV");
      return {
        id,
        panels: [
          panelEnv("estimated fidelity vs system size", "n", "F estimate", "linear", "linear",
            aggregate(swept, (r) => r.model, (r) => r.n, "F_hat")),
        ],
      };
    }
    case "fig6": {
      // a combined CSV may hold both a shots sweep (fixed M) and an M
      // sweep (fixed shots); assign each row to the panel whose axis it
      // actually sweeps at its fixed coordinate
      const byNs = sweepAtFixed(rows, (r) => r.Ns, (r) => r.M ?? NaN);
      const byM = sweepAtFixed(rows, (r) => r.M ?? NaN, (r) => r.Ns);
      const panels: Panel[] = [];
      if (byNs.length > 0) {
        panels.push(
          panel("estimator spread vs shots", "shots", "std of F estimate", "log", "log",
            aggregateStd(byNs, (r) => r.model, (r) => r.Ns, "F_hat")),
        );
      }
      if (byM.length > 0) {
        panels.push(
          panel("estimator spread vs sampled indices", "M", "std of F estimate", "log", "log",
            aggregateStd(byM, (r) => r.model, (r) => r.M ?? NaN, "F_hat")),
        );
      }
      if (panels.length === 0) throw new Error("fig6: no Ns or M sweep found in CSV");
      return { id, panels };
    }
  }
}

// Mean-line panels carry a std envelope; spread panels (where the
// plotted value already is a std dev) do not.
function panel(
  title: string, xLabel: string, yLabel: string,
  xScale: AxisScale, yScale: AxisScale, series: Series[],
): Panel {
  const envelope = series.some((s) => s.points.some((p) => p.std > 0));
  return { title, xLabel, yLabel, xScale, yScale, envelope, series };
}

const panelEnv = panel;
