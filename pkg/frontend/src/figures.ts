/** Scene builders for the three figure kinds. */

import { ConvergenceRow, DiagnosticsSeries, SnapshotSeries } from "./csv.js";
import { formatTick, linearScale, logScale, Scale } from "./scale.js";
import { PALETTE, Primitive, Scene } from "./scene.js";

export type RefSlope = { kind: "algebraic"; order: number } | { kind: "exponential" } | null;

export interface FigureOptions {
  title?: string;
  ref?: RefSlope;
}

interface Box {
  x0: number;
  y0: number;
  w: number;
  h: number;
}

const AXIS = "#444444";
const GRID = "#dddddd";

function axes(
  prims: Primitive[], box: Box, x: Scale, y: Scale,
  xLabel: string, yLabel: string, title?: string,
): void {
  prims.push({ kind: "rect", x: box.x0, y: box.y0, w: box.w, h: box.h, fill: "white" });
  for (const t of x.ticks) {
    const px = x(t);
    prims.push({ kind: "line", x1: px, y1: box.y0, x2: px, y2: box.y0 + box.h, color: GRID });
    prims.push({
      kind: "text", x: px, y: box.y0 + box.h + 16, text: formatTick(t, x.kind),
      size: 11, anchor: "middle",
    });
  }
  for (const t of y.ticks) {
    const py = y(t);
    prims.push({ kind: "line", x1: box.x0, y1: py, x2: box.x0 + box.w, y2: py, color: GRID });
    prims.push({
      kind: "text", x: box.x0 - 6, y: py + 4, text: formatTick(t, y.kind),
      size: 11, anchor: "end",
    });
  }
  prims.push({
    kind: "line", x1: box.x0, y1: box.y0 + box.h, x2: box.x0 + box.w, y2: box.y0 + box.h,
    color: AXIS, width: 1.5,
  });
  prims.push({
    kind: "line", x1: box.x0, y1: box.y0, x2: box.x0, y2: box.y0 + box.h,
    color: AXIS, width: 1.5,
  });
  prims.push({
    kind: "text", x: box.x0 + box.w / 2, y: box.y0 + box.h + 34, text: xLabel,
    size: 12, anchor: "middle",
  });
  prims.push({ kind: "text", x: box.x0 - 44, y: box.y0 - 8, text: yLabel, size: 12 });
  if (title) {
    prims.push({
      kind: "text", x: box.x0 + box.w / 2, y: box.y0 - 8, text: title,
      size: 13, anchor: "middle",
    });
  }
}

function legend(prims: Primitive[], box: Box, entries: [string, string, boolean][]): void {
  let yy = box.y0 + 16;
  for (const [label, color, dash] of entries) {
    prims.push({
      kind: "line", x1: box.x0 + box.w - 130, y1: yy - 4, x2: box.x0 + box.w - 104, y2: yy - 4,
      color, width: 2, dash,
    });
    prims.push({ kind: "text", x: box.x0 + box.w - 98, y: yy, text: label, size: 11 });
    yy += 16;
  }
}

export function convergenceScene(rows: ConvergenceRow[], opts: FigureOptions = {}): Scene {
  const series: { label: string; pts: [number, number][] }[] = [
    { label: "L2 error", pts: [] },
    { label: "Linf error", pts: [] },
  ];
  for (const r of rows) {
    if (r.l2Error !== null && r.l2Error > 0) series[0].pts.push([r.N, r.l2Error]);
    if (r.linfError !== null && r.linfError > 0) series[1].pts.push([r.N, r.linfError]);
  }
  const all = series.flatMap((s) => s.pts);
  if (all.length === 0) throw new Error("convergence table has no positive finite errors to plot");
  const ns = all.map((p) => p[0]);
  const es = all.map((p) => p[1]);
  const width = 640;
  const height = 440;
  const box: Box = { x0: 70, y0: 40, w: width - 95, h: height - 110 };
  const exponential = opts.ref?.kind === "exponential";
  const x = exponential
    ? linearScale([0, Math.max(...ns) * 1.05], [box.x0, box.x0 + box.w])
    : logScale([Math.min(...ns) / 1.3, Math.max(...ns) * 1.3], [box.x0, box.x0 + box.w]);
  const y = logScale(
    [Math.min(...es) / 3, Math.max(...es) * 3],
    [box.y0 + box.h, box.y0],
  );
  const prims: Primitive[] = [
    { kind: "rect", x: 0, y: 0, w: width, h: height, fill: "white" },
  ];
  axes(prims, box, x, y, "N", "error", opts.title ?? "Convergence");
  const entries: [string, string, boolean][] = [];
  series.forEach((s, i) => {
    if (s.pts.length === 0) return;
    const pix = s.pts.map(([n, e]) => [x(n), y(e)] as [number, number]);
    prims.push({ kind: "polyline", points: pix, color: PALETTE[i], width: 2 });
    for (const [px, py] of pix) prims.push({ kind: "marker", x: px, y: py, color: PALETTE[i] });
    entries.push([s.label, PALETTE[i], false]);
  });
  const ref = opts.ref ?? null;
  if (ref && series[0].pts.length >= 2) {
    const pts = series[0].pts;
    const [n0, e0] = pts[0];
    const [n1] = pts[pts.length - 1];
    let refPts: [number, number][];
    let label: string;
    if (ref.kind === "algebraic") {
      const p = ref.order;
      refPts = [n0, n1].map((n) => [n, 1.5 * e0 * Math.pow(n / n0, -p)] as [number, number]);
      label = `N^-${p}`;
    } else {
      const [nL, eL] = pts[pts.length - 1];
      const c = Math.log(e0 / eL) / (nL - n0);
      refPts = [n0, nL].map((n) => [n, 1.5 * e0 * Math.exp(-c * (n - n0))] as [number, number]);
      label = "exp(-cN)";
    }
    prims.push({
      kind: "polyline",
      points: refPts.map(([n, e]) => [x(n), y(e)] as [number, number]),
      color: "#777777", width: 1.5, dash: true,
    });
    entries.push([label, "#777777", true]);
  }
  legend(prims, box, entries);
  return { width, height, prims };
}

export function profileScene(
  snapshots: { label: string; data: SnapshotSeries }[],
  opts: FigureOptions = {},
): Scene {
  if (snapshots.length === 0) throw new Error("no snapshot inputs given");
  const cols = snapshots.length > 1 ? 2 : 1;
  const rows = Math.ceil(snapshots.length / cols);
  const panelW = 340;
  const panelH = 240;
  const width = cols * panelW + 40;
  const height = rows * panelH + 50;
  const uAll = snapshots.flatMap((s) => s.data.u);
  const uLo = Math.min(...uAll);
  const uHi = Math.max(...uAll);
  const pad = 0.05 * (uHi - uLo || 1);
  const prims: Primitive[] = [
    { kind: "rect", x: 0, y: 0, w: width, h: height, fill: "white" },
  ];
  if (opts.title) {
    prims.push({ kind: "text", x: width / 2, y: 20, text: opts.title, size: 14, anchor: "middle" });
  }
  snapshots.forEach((snap, i) => {
    const r = Math.floor(i / cols);
    const c = i % cols;
    const box: Box = {
      x0: 60 + c * panelW, y0: 46 + r * panelH, w: panelW - 80, h: panelH - 70,
    };
    const xs = snap.data.x;
    const x = linearScale([xs[0], xs[xs.length - 1]], [box.x0, box.x0 + box.w]);
    const y = linearScale([uLo - pad, uHi + pad], [box.y0 + box.h, box.y0]);
    axes(prims, box, x, y, "x", "u", snap.label);
    prims.push({
      kind: "polyline",
      points: snap.data.x.map((xv, j) => [x(xv), y(snap.data.u[j])] as [number, number]),
      color: PALETTE[0], width: 1.5,
    });
  });
  return { width, height, prims };
}

export function diagnosticsScene(diag: DiagnosticsSeries, opts: FigureOptions = {}): Scene {
  const panels: { label: string; values: number[] }[] = [
    { label: "mass", values: diag.mass },
    { label: "energy", values: diag.energy },
    { label: "L2 norm", values: diag.l2 },
    { label: "sup norm", values: diag.linf },
  ];
  const panelW = 340;
  const panelH = 230;
  const width = 2 * panelW + 40;
  const height = 2 * panelH + 50;
  const prims: Primitive[] = [
    { kind: "rect", x: 0, y: 0, w: width, h: height, fill: "white" },
  ];
  if (opts.title) {
    prims.push({ kind: "text", x: width / 2, y: 20, text: opts.title, size: 14, anchor: "middle" });
  }
  panels.forEach((panel, i) => {
    const r = Math.floor(i / 2);
    const c = i % 2;
    const box: Box = {
      x0: 70 + c * panelW, y0: 46 + r * panelH, w: panelW - 90, h: panelH - 70,
    };
    const lo = Math.min(...panel.values);
    const hi = Math.max(...panel.values);
    const pad = 0.1 * (hi - lo || Math.abs(hi) * 1e-9 || 1);
    const x = linearScale(
      [diag.t[0], diag.t[diag.t.length - 1]], [box.x0, box.x0 + box.w],
    );
    const y = linearScale([lo - pad, hi + pad], [box.y0 + box.h, box.y0]);
    axes(prims, box, x, y, "t", "", panel.label);
    prims.push({
      kind: "polyline",
      points: diag.t.map((tv, j) => [x(tv), y(panel.values[j])] as [number, number]),
      color: PALETTE[i % PALETTE.length], width: 1.5,
    });
  });
  return { width, height, prims };
}
