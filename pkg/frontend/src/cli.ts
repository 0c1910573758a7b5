#!/usr/bin/env node
/** render: turn solver CSV output into SVG/PNG figures.
 *
 *   render --kind convergence --in table.csv --out fig.svg [--ref N^-1|exp]
 *   render --kind profile --in snapA.csv --in snapB.csv --out fig.png
 *   render --kind diagnostics --in diag.csv --out fig.svg
 *
 * Exit codes mirror the solver CLI: 0 success, 2 usage/config/parse error.
 */

import { readFileSync, writeFileSync } from "node:fs";
import path from "node:path";

import { CsvError, parseConvergence, parseDiagnostics, parseSnapshot } from "./csv.js";
import { convergenceScene, diagnosticsScene, profileScene, RefSlope } from "./figures.js";
import { sceneToPng } from "./png.js";
import { Scene } from "./scene.js";
import { sceneToSvg } from "./svg.js";

export const EXIT_OK = 0;
export const EXIT_USAGE = 2;

export interface RenderArgs {
  kind: "profile" | "convergence" | "diagnostics";
  inputs: string[];
  out: string;
  title?: string;
  labels?: string[];
  ref: RefSlope;
}

export class UsageError extends Error {}

export function parseArgs(argv: string[]): RenderArgs {
  const args = [...argv];
  if (args[0] === "render") args.shift();
  let kind: string | undefined;
  const inputs: string[] = [];
  let out: string | undefined;
  let title: string | undefined;
  let labels: string[] | undefined;
  let ref: RefSlope = null;
  const next = (flag: string): string => {
    const v = args.shift();
    if (v === undefined) throw new UsageError(`missing value for ${flag}`);
    return v;
  };
  while (args.length > 0) {
    const a = args.shift()!;
    switch (a) {
      case "--kind":
        kind = next(a);
        break;
      case "--in":
        inputs.push(...next(a).split(",").filter((s) => s.length > 0));
        break;
      case "--out":
        out = next(a);
        break;
      case "--title":
        title = next(a);
        break;
      case "--labels":
        labels = next(a).split(",");
        break;
      case "--ref": {
        const v = next(a);
        if (v === "none") ref = null;
        else if (v === "exp" || v === "exponential") ref = { kind: "exponential" };
        else {
          const m = /^N\^-?([0-9.]+)$/.exec(v);
          if (!m) throw new UsageError(`--ref must be "exp", "none", or "N^-<p>", got "${v}"`);
          ref = { kind: "algebraic", order: Number(m[1]) };
        }
        break;
      }
      case "--help":
      case "-h":
        throw new UsageError("usage: render --kind <profile|convergence|diagnostics> --in <csv> [--in <csv> ...] --out <fig.svg|fig.png> [--title t] [--labels a,b] [--ref N^-1|exp]");
      default:
        throw new UsageError(`unknown argument "${a}"`);
    }
  }
  if (kind !== "profile" && kind !== "convergence" && kind !== "diagnostics") {
    throw new UsageError(`--kind must be profile, convergence, or diagnostics, got "${kind}"`);
  }
  if (inputs.length === 0) throw new UsageError("at least one --in CSV is required");
  if (!out) throw new UsageError("--out is required");
  if (kind !== "profile" && inputs.length !== 1) {
    throw new UsageError(`--kind ${kind} takes exactly one input CSV`);
  }
  return { kind, inputs, out, title, labels, ref };
}

function defaultLabel(file: string): string {
  return path.basename(file).replace(/\.csv$/, "");
}

export function buildScene(a: RenderArgs): Scene {
  const read = (f: string): string => {
    try {
      return readFileSync(f, "utf8");
    } catch (err) {
      throw new UsageError(`cannot read ${f}: ${(err as Error).message}`);
    }
  };
  switch (a.kind) {
    case "convergence":
      return convergenceScene(parseConvergence(read(a.inputs[0]), a.inputs[0]), {
        title: a.title ?? defaultLabel(a.inputs[0]),
        ref: a.ref,
      });
    case "diagnostics":
      return diagnosticsScene(parseDiagnostics(read(a.inputs[0]), a.inputs[0]), {
        title: a.title ?? defaultLabel(a.inputs[0]),
      });
    case "profile":
      return profileScene(
        a.inputs.map((f, i) => ({
          label: a.labels?.[i] ?? defaultLabel(f),
          data: parseSnapshot(read(f), f),
        })),
        { title: a.title },
      );
  }
}

export function writeScene(scene: Scene, out: string): void {
  if (out.endsWith(".png")) {
    writeFileSync(out, sceneToPng(scene));
  } else if (out.endsWith(".svg")) {
    writeFileSync(out, sceneToSvg(scene));
  } else {
    throw new UsageError(`--out must end with .svg or .png, got "${out}"`);
  }
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    writeScene(buildScene(args), args.out);
    console.log(`wrote ${args.out}`);
    return EXIT_OK;
  } catch (err) {
    if (err instanceof UsageError || err instanceof CsvError || err instanceof Error) {
      console.error(`error: ${(err as Error).message}`);
      return EXIT_USAGE;
    }
    throw err;
  }
}

const entry = process.argv[1] ? path.resolve(process.argv[1]) : "";
if (entry.endsWith(path.join("dist", "cli.js"))) {
  process.exit(main(process.argv.slice(2)));
}
