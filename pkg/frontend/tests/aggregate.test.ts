import { describe, expect, it } from "vitest";
import { aggregate, aggregateStd } from "../src/aggregate.js";
import { parseResults } from "../src/csv.js";
import { makeCsv } from "./helpers.js";

const rows = parseResults(
  makeCsv([
    { protocol: "a", Ns: 100, l2_error: 0.2 },
    { protocol: "a", Ns: 100, l2_error: 0.4 },
    { protocol: "a", Ns: 1000, l2_error: 0.1 },
    { protocol: "b", Ns: 1000, l2_error: 0.5 },
  ]),
);

describe("aggregate", () => {
  it("groups by series key and x, with mean and sample std", () => {
    const series = aggregate(rows, (r) => r.protocol, (r) => r.Ns, "l2_error");
    expect(series.map((s) => s.name)).toEqual(["a", "b"]);
    const a = series[0];
    expect(a.points.map((p) => p.x)).toEqual([100, 1000]);
    expect(a.points[0].mean).toBeCloseTo(0.3);
    expect(a.points[0].std).toBeCloseTo(Math.sqrt(0.02), 10);
    expect(a.points[0].trials).toBe(2);
    expect(a.points[1].std).toBe(0);
  });

  it("drops rows whose metric is blank", () => {
    const withRefusal = parseResults(
      makeCsv([
        { protocol: "a", Ns: 100, l2_error: 0.2 },
        { protocol: "a", Ns: 50, l2_error: "", F_hat: "", F_err: "" },
      ]),
    );
    const series = aggregate(withRefusal, (r) => r.protocol, (r) => r.Ns, "l2_error");
    expect(series[0].points.map((p) => p.x)).toEqual([100]);
  });

  it("sorts points by x even when rows arrive out of order", () => {
    const shuffled = [...rows].reverse();
    const series = aggregate(shuffled, (r) => r.protocol, (r) => r.Ns, "l2_error");
    expect(series[0].points.map((p) => p.x)).toEqual([100, 1000]);
  });
});

describe("aggregateStd", () => {
  it("plots the trial std dev as the point value with no envelope", () => {
    const series = aggregateStd(rows, (r) => r.protocol, (r) => r.Ns, "l2_error");
    expect(series[0].points[0].mean).toBeCloseTo(Math.sqrt(0.02), 10);
    expect(series[0].points[0].std).toBe(0);
  });
});
