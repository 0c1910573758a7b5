export { CsvError, parseConvergence, parseDiagnostics, parseSnapshot } from "./csv.js";
export type { ConvergenceRow, DiagnosticsSeries, SnapshotSeries } from "./csv.js";
export { convergenceScene, diagnosticsScene, profileScene } from "./figures.js";
export type { FigureOptions, RefSlope } from "./figures.js";
export { linearScale, logScale, linearTicks, logTicks, formatTick } from "./scale.js";
export type { Primitive, Scene } from "./scene.js";
export { sceneToSvg } from "./svg.js";
export { sceneToPng } from "./png.js";
export { buildScene, main, parseArgs, writeScene, UsageError } from "./cli.js";
