import { readFileSync } from "node:fs";
import Papa from "papaparse";

/** One trial result parsed from a harness CSV. Metric fields are null
 *  for refused cells (the harness writes them blank). */
export interface ResultRow {
  protocol: string;
  graph: string;
  n: number;
  model: string;
  F_true: number;
  Ns: number;
  M: number | null;
  trial: number;
  l2_error: number | null;
  linf_error: number | null;
  F_hat: number | null;
  F_err: number | null;
}

export const REQUIRED_COLUMNS = [
  "protocol",
  "graph",
  "n",
  "model",
  "F_true",
  "Ns",
  "M",
  "trial",
  "l2_error",
  "linf_error",
  "F_hat",
  "F_err",
] as const;

function num(value: string): number {
  const v = Number(value);
  if (!Number.isFinite(v)) throw new Error(`not a number: ${JSON.stringify(value)}`);
  return v;
}

function numOrNull(value: string | undefined): number | null {
  if (value === undefined || value === "") return null;
  return num(value);
}

/** Parse a harness CSV string. Rejects inputs missing required columns
 *  (listing them) and inputs with no data rows. */
export function parseResults(text: string): ResultRow[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new Error(`CSV parse failed: ${parsed.errors[0].message}`);
  }
  const columns = parsed.meta.fields ?? [];
  const missing = REQUIRED_COLUMNS.filter((c) => !columns.includes(c));
  if (missing.length > 0) {
    throw new Error(`missing columns: ${missing.join(", ")}`);
  }
  if (parsed.data.length === 0) {
    throw new Error("CSV contains no data rows");
  }
  return parsed.data.map((r) => ({
    protocol: r.protocol,
    graph: r.graph,
    n: num(r.n),
    model: r.model,
    F_true: num(r.F_true),
    Ns: num(r.Ns),
    M: numOrNull(r.M),
    trial: num(r.trial),
    l2_error: numOrNull(r.l2_error),
    linf_error: numOrNull(r.linf_error),
    F_hat: numOrNull(r.F_hat),
    F_err: numOrNull(r.F_err),
  }));
}

/** Read and concatenate one or more harness CSV files. */
export function loadResults(paths: string[]): ResultRow[] {
  if (paths.length === 0) throw new Error("at least one CSV path is required");
  return paths.flatMap((p) => parseResults(readFileSync(p, "utf8")));
}
