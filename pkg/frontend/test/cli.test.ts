import { existsSync, mkdtempSync, readdirSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import path from "node:path";
import { afterEach, describe, expect, it, vi } from "vitest";

import { EXIT_OK, EXIT_USAGE, main, parseArgs, UsageError } from "../src/cli.js";

const FIX = new URL("../fixtures/", import.meta.url).pathname;

function tmp(): string {
  return mkdtempSync(path.join(tmpdir(), "fracwave-plots-"));
}

afterEach(() => {
  vi.restoreAllMocks();
});

function quiet() {
  vi.spyOn(console, "log").mockImplementation(() => {});
  vi.spyOn(console, "error").mockImplementation(() => {});
}

describe("parseArgs", () => {
  it("parses the documented invocation shape", () => {
    const a = parseArgs(["render", "--kind", "convergence", "--in", "t.csv", "--out", "f.png"]);
    expect(a.kind).toBe("convergence");
    expect(a.inputs).toEqual(["t.csv"]);
    expect(a.out).toBe("f.png");
  });

  it("accepts repeated and comma-separated inputs", () => {
    const a = parseArgs(["--kind", "profile", "--in", "a.csv,b.csv", "--in", "c.csv", "--out", "f.svg"]);
    expect(a.inputs).toEqual(["a.csv", "b.csv", "c.csv"]);
  });

  it("rejects unknown kinds, flags, and missing arguments", () => {
    expect(() => parseArgs(["--kind", "pie", "--in", "a", "--out", "b"])).toThrowError(UsageError);
    expect(() => parseArgs(["--what"])).toThrowError(UsageError);
    expect(() => parseArgs(["--kind", "profile"])).toThrowError(/--in/);
    expect(() => parseArgs(["--kind", "convergence", "--in", "a.csv,b.csv", "--out", "f.svg"]))
      .toThrowError(/exactly one/);
    expect(() => parseArgs(["--kind", "convergence", "--in", "a.csv", "--out", "f.svg", "--ref", "banana"]))
      .toThrowError(/--ref/);
  });
});

describe("main", () => {
  it("renders every fixture kind without error", () => {
    quiet();
    const dir = tmp();
    const jobs: string[][] = [
      ["--kind", "convergence", "--in", FIX + "ex1-smooth_convergence.csv",
       "--out", path.join(dir, "ex1-conv.svg"), "--ref", "exp"],
      ["--kind", "convergence", "--in", FIX + "ex5-bbm_convergence.csv",
       "--out", path.join(dir, "ex5-conv.png")],
      ["--kind", "profile",
       "--in", [FIX + "ex3-two-peakon_t0_N256.csv", FIX + "ex3-two-peakon_t5_N256.csv",
                FIX + "ex3-two-peakon_t12_N256.csv", FIX + "ex3-two-peakon_t20_N256.csv"].join(","),
       "--out", path.join(dir, "ex3-profile.svg")],
      ["--kind", "diagnostics", "--in", FIX + "ex2-peakon_diagnostics_N512.csv",
       "--out", path.join(dir, "ex2-diag.svg")],
    ];
    for (const argv of jobs) {
      expect(main(argv)).toBe(EXIT_OK);
    }
    expect(readdirSync(dir).sort()).toEqual(
      ["ex1-conv.svg", "ex2-diag.svg", "ex3-profile.svg", "ex5-conv.png"],
    );
  });

  it("consumes the fixture set from every catalog experiment", () => {
    quiet();
    const dir = tmp();
    const files = readdirSync(FIX).filter((f) => f.endsWith(".csv"));
    expect(files.length).toBeGreaterThan(20);
    for (const f of files) {
      const kind = f.includes("convergence") ? "convergence"
        : f.includes("diagnostics") ? "diagnostics" : "profile";
      const out = path.join(dir, f.replace(/\.csv$/, ".svg"));
      expect(main(["--kind", kind, "--in", FIX + f, "--out", out]), f).toBe(EXIT_OK);
      expect(existsSync(out)).toBe(true);
    }
  });

  it("fails with exit 2 and names the file and line on malformed input", () => {
    const dir = tmp();
    const bad = path.join(dir, "broken.csv");
    writeFileSync(bad, "N,l2_error,l2_order,linf_error,linf_order\n16,zap,,1,\n");
    const errors: string[] = [];
    vi.spyOn(console, "error").mockImplementation((msg) => errors.push(String(msg)));
    expect(main(["--kind", "convergence", "--in", bad, "--out", path.join(dir, "f.svg")]))
      .toBe(EXIT_USAGE);
    expect(errors.join("\n")).toMatch(/broken\.csv:2/);
  });

  it("fails with exit 2 on an empty csv", () => {
    quiet();
    const dir = tmp();
    const empty = path.join(dir, "empty.csv");
    writeFileSync(empty, "");
    expect(main(["--kind", "profile", "--in", empty, "--out", path.join(dir, "f.svg")]))
      .toBe(EXIT_USAGE);
  });

  it("fails with exit 2 on a missing file or bad extension", () => {
    quiet();
    const dir = tmp();
    expect(main(["--kind", "diagnostics", "--in", path.join(dir, "nope.csv"),
                 "--out", path.join(dir, "f.svg")])).toBe(EXIT_USAGE);
    expect(main(["--kind", "diagnostics", "--in", FIX + "ex5-bbm_diagnostics_N128.csv",
                 "--out", path.join(dir, "f.gif")])).toBe(EXIT_USAGE);
  });

  it("never modifies its input csvs", () => {
    quiet();
    const dir = tmp();
    const src = FIX + "ex1-smooth_convergence.csv";
    const before = readFileSync(src, "utf8");
    main(["--kind", "convergence", "--in", src, "--out", path.join(dir, "f.svg")]);
    expect(readFileSync(src, "utf8")).toBe(before);
  });
});
