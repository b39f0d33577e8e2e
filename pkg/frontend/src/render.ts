import { createRequire } from "node:module";
import type { EChartsOption, SeriesOption, EChartsType } from "echarts/types/dist/shared";
import { Figure, Panel } from "./figures.js";

// echarts ships `export =` typings that NodeNext refuses to pair with an
// ESM namespace import; load the CommonJS build explicitly instead.
const echarts = createRequire(import.meta.url)("echarts") as {
  init: (el: null, theme: null, opts: object) => EChartsType;
};

const PANEL_WIDTH = 480;
const PANEL_HEIGHT = 360;

const PALETTE = ["#4e79a7", "#e15759", "#59a14f", "#f28e2b", "#b07aa1", "#76b7b2"];

function axis(scale: "linear" | "log", name: string): Record<string, unknown> {
  return {
    type: scale === "log" ? "log" : "value",
    name,
    nameLocation: "middle",
    nameGap: 28,
  };
}

function panelOption(panel: Panel): EChartsOption {
  const series: SeriesOption[] = [];
  panel.series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    let points = s.points;
    if (panel.yScale === "log") points = points.filter((p) => p.mean > 0);
    if (panel.envelope) {
      // std envelope as a stacked band under the mean line; on a log
      // axis the lower edge is clamped to stay positive
      const lower = points.map((p) => {
        const lo = p.mean - p.std;
        return [p.x, panel.yScale === "log" && lo <= 0 ? p.mean * 1e-3 : lo];
      });
      const widths = points.map((p, j) => [p.x, p.mean + p.std - (lower[j][1] as number)]);
      series.push(
        {
          name: `${s.name} (band lower)`, type: "line", data: lower, stack: s.name,
          lineStyle: { opacity: 0 }, symbol: "none", silent: true, color,
        },
        {
          name: `${s.name} (band)`, type: "line", data: widths, stack: s.name,
          lineStyle: { opacity: 0 }, symbol: "none", silent: true, color,
          areaStyle: { opacity: 0.2 },
        },
      );
    }
    series.push({
      name: s.name,
      type: "line",
      data: points.map((p) => [p.x, p.mean]),
      symbol: "circle",
      symbolSize: 6,
      color,
    });
  });
  return {
    animation: false,
    title: { text: panel.title, left: "center", textStyle: { fontSize: 13 } },
    legend: { bottom: 0, data: panel.series.map((s) => s.name) },
    grid: { top: 40, left: 60, right: 20, bottom: 70 },
    xAxis: axis(panel.xScale, panel.xLabel),
    yAxis: axis(panel.yScale, panel.yLabel),
    series,
  };
}

function renderPanelSvg(panel: Panel): string {
  const chart = echarts.init(null, null, {
    renderer: "svg",
    ssr: true,
    width: PANEL_WIDTH,
    height: PANEL_HEIGHT,
  });
  chart.setOption(panelOption(panel));
  const svg = chart.renderToSVGString();
  chart.dispose();
  return svg;
}

/** Render all of a figure's panels into one SVG document (two-column
 *  layout), returned as a string. */
export function renderFigureSvg(figure: Figure): string {
  const cols = Math.min(2, figure.panels.length);
  const rows = Math.ceil(figure.panels.length / cols);
  const width = cols * PANEL_WIDTH;
  const height = rows * PANEL_HEIGHT;
  const parts = figure.panels.map((p, i) => {
    const x = (i % cols) * PANEL_WIDTH;
    const y = Math.floor(i / cols) * PANEL_HEIGHT;
    // zrender numbers its id namespace per live instance, which would
    // make output depend on how many charts were rendered before;
    // rewrite to the panel index for deterministic, still-unique ids
    // zrender numbers ids and class names from process-global counters,
    // which would make output depend on how many charts were rendered
    // before; renumber per panel in first-appearance order so identical
    // input yields identical bytes (and ids stay unique across panels)
    const renumbered = new Map<string, string>();
    const inner = renderPanelSvg(p)
      .replace(/zr\d+-([a-z]+)-(\d+)/g, (match, kind) => {
        let fresh = renumbered.get(match);
        if (fresh === undefined) {
          fresh = `zrp${i}-${kind}-${renumbered.size}`;
          renumbered.set(match, fresh);
        }
        return fresh;
      })
      .replace(/zr\d+-/g, `zrp${i}-`)
      .replace(/^<svg /, `<svg x="${x}" y="${y}" `);
    return inner;
  });
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n${parts.join("\n")}\n</svg>\n`
  );
}
