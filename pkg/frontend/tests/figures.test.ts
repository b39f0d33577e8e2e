import { describe, expect, it } from "vitest";
import { parseResults } from "../src/csv.js";
import { buildFigure } from "../src/figures.js";
import { makeCsv, RowInput } from "./helpers.js";

function grid(inputs: {
  protocols?: string[];
  models?: string[];
  Ns?: number[];
  F?: number[];
  n?: number[];
  M?: number[];
  trials?: number;
}): RowInput[] {
  const rows: RowInput[] = [];
  for (const protocol of inputs.protocols ?? ["bsqn_full"]) {
    for (const model of inputs.models ?? ["depolarizing"]) {
      for (const F_true of inputs.F ?? [0.9]) {
        for (const n of inputs.n ?? [8]) {
          for (const Ns of inputs.Ns ?? [1000]) {
            for (const M of inputs.M ?? [NaN]) {
              for (let trial = 0; trial < (inputs.trials ?? 3); trial++) {
                rows.push({
                  protocol,
                  model,
                  F_true,
                  n,
                  Ns,
                  M: Number.isNaN(M) ? "" : M,
                  trial,
                  l2_error: 0.01 * (1 + trial),
                  F_hat: 0.9 - 0.01 * trial,
                  F_err: 0.001 * (1 + trial),
                });
              }
            }
          }
        }
      }
    }
  }
  return rows;
}

describe("fig3", () => {
  it("builds shot-sweep panels with one series per protocol and one point per cell", () => {
    const rows = parseResults(
      makeCsv(grid({ protocols: ["bsqn_full", "dge"], Ns: [100, 1000, 10000] })),
    );
    const fig = buildFigure("fig3", rows);
    expect(fig.panels).toHaveLength(2); // l2 and |dF| vs Ns; no F sweep present
    for (const panel of fig.panels) {
      expect(panel.series.map((s) => s.name)).toEqual(["bsqn_full", "dge"]);
      for (const s of panel.series) expect(s.points).toHaveLength(3);
      expect(panel.xScale).toBe("log");
      expect(panel.yScale).toBe("log");
    }
  });

  it("adds fidelity-sweep panels when a second CSV sweeps F", () => {
    const byNs = makeCsv(grid({ Ns: [100, 1000] }));
    const byF = makeCsv(grid({ F: [0.6, 0.8, 0.95], Ns: [10000] }));
    const rows = [...parseResults(byNs), ...parseResults(byF)];
    const fig = buildFigure("fig3", rows);
    expect(fig.panels).toHaveLength(4);
    expect(fig.panels[2].xScale).toBe("linear");
    expect(fig.panels[2].series[0].points).toHaveLength(3);
  });

  it("rejects data with no sweep at all", () => {
    const rows = parseResults(makeCsv(grid({})));
    expect(() => buildFigure("fig3", rows)).toThrowError(/no Ns or F sweep/);
  });
});

describe("fig4", () => {
  it("plots error vs n on a log y-axis", () => {
    const rows = parseResults(
      makeCsv(grid({ protocols: ["bsqn_full", "dge"], n: [4, 8, 12] })),
    );
    const fig = buildFigure("fig4", rows);
    expect(fig.panels).toHaveLength(1);
    expect(fig.panels[0].yScale).toBe("log");
    expect(fig.panels[0].series).toHaveLength(2);
    expect(fig.panels[0].series[0].points).toHaveLength(3);
  });
});

describe("fig5", () => {
  it("plots mean fidelity with a std envelope, one series per model", () => {
    const rows = parseResults(
      makeCsv(
        grid({ models: ["depolarizing", "dephasing_iid", "bimodal"], n: [20, 40, 80] }),
      ),
    );
    const fig = buildFigure("fig5", rows);
    const panel = fig.panels[0];
    expect(panel.envelope).toBe(true);
    expect(panel.series.map((s) => s.name)).toEqual([
      "bimodal",
      "dephasing_iid",
      "depolarizing",
    ]);
    for (const s of panel.series) expect(s.points).toHaveLength(3);
  });
});

describe("fig6", () => {
  it("builds spread-vs-shots and spread-vs-M panels", () => {
    const byNs = makeCsv(grid({ models: ["depolarizing", "bimodal"], Ns: [200, 2000], M: [80] }));
    const byM = makeCsv(grid({ models: ["depolarizing", "bimodal"], Ns: [20000], M: [40, 400] }));
    const rows = [...parseResults(byNs), ...parseResults(byM)];
    const fig = buildFigure("fig6", rows);
    expect(fig.panels).toHaveLength(2);
    for (const panel of fig.panels) {
      expect(panel.envelope).toBe(false);
      expect(panel.series).toHaveLength(2);
      for (const s of panel.series) {
        expect(s.points.length).toBeGreaterThanOrEqual(2);
        for (const p of s.points) expect(p.std).toBe(0);
      }
    }
  });
});

describe("determinism", () => {
  it("is a pure function of the CSV bytes", () => {
    const text = makeCsv(grid({ Ns: [100, 1000, 10000], trials: 5 }));
    const a = buildFigure("fig3", parseResults(text));
    const b = buildFigure("fig3", parseResults(text));
    expect(a).toEqual(b);
  });
});
