export interface RowInput {
  protocol?: string;
  model?: string;
  n?: number;
  F_true?: number;
  Ns?: number;
  M?: number | "";
  trial?: number;
  l2_error?: number | "";
  F_hat?: number | "";
  F_err?: number | "";
}

export const HEADER =
  "protocol,graph,n,model,F_true,Ns,M,trial,seed,l2_error,linf_error,F_hat,F_err,wall_ms";

/** Build a harness-shaped CSV string from sparse row descriptions. */
export function makeCsv(rows: RowInput[]): string {
  const lines = [HEADER];
  rows.forEach((r, i) => {
    const linf = r.l2_error === "" ? "" : 0.005;
    lines.push(
      [
        r.protocol ?? "bsqn_full",
        "complete",
        r.n ?? 8,
        r.model ?? "depolarizing",
        r.F_true ?? 0.9,
        r.Ns ?? 1000,
        r.M ?? "",
        r.trial ?? i,
        123,
        r.l2_error ?? 0.01,
        linf,
        r.F_hat ?? 0.9,
        r.F_err ?? 0.001,
        1.0,
      ].join(","),
    );
  });
  return lines.join("\n") + "\n";
}
