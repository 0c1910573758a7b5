import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { CsvError, parseConvergence, parseDiagnostics, parseSnapshot } from "../src/csv.js";

const FIX = new URL("../fixtures/", import.meta.url).pathname;

describe("parseConvergence", () => {
  it("reads a real solver table", () => {
    const rows = parseConvergence(readFileSync(FIX + "ex1-smooth_convergence.csv", "utf8"), "t.csv");
    expect(rows.length).toBe(5);
    expect(rows[0].N).toBe(16);
    expect(rows[0].l2Order).toBeNull(); // first row has no order
    expect(rows[4].N).toBe(256);
    expect(rows[4].l2Error).toBeGreaterThan(0);
    expect(rows[4].l2Order).toBeGreaterThan(5);
  });

  it("accepts empty error cells on failed rows", () => {
    const rows = parseConvergence("N,l2_error,l2_order,linf_error,linf_order\n16,,,,\n", "t.csv");
    expect(rows[0].l2Error).toBeNull();
  });

  it("rejects a wrong header with the file name and line", () => {
    expect(() => parseConvergence("N,l2,order\n1,2,3\n", "bad.csv"))
      .toThrowError(/bad\.csv:1: expected header/);
  });

  it("rejects an empty file", () => {
    expect(() => parseConvergence("", "empty.csv")).toThrowError(CsvError);
    expect(() => parseConvergence("", "empty.csv")).toThrowError(/empty\.csv:1/);
  });

  it("rejects a header-only file", () => {
    expect(() => parseConvergence("N,l2_error,l2_order,linf_error,linf_order\n", "h.csv"))
      .toThrowError(/h\.csv:2: no data rows/);
  });

  it("rejects non-numeric cells with the offending line number", () => {
    const text = "N,l2_error,l2_order,linf_error,linf_order\n16,1e-1,,1e-1,\n32,oops,1,1e-2,1\n";
    expect(() => parseConvergence(text, "t.csv")).toThrowError(/t\.csv:3: .*l2_error/);
  });

  it("rejects ragged rows", () => {
    const text = "N,l2_error,l2_order,linf_error,linf_order\n16,1e-1,\n";
    expect(() => parseConvergence(text, "t.csv")).toThrowError(/t\.csv:2: expected 5 columns/);
  });
});

describe("parseDiagnostics", () => {
  it("reads a real diagnostics series", () => {
    const d = parseDiagnostics(readFileSync(FIX + "ex2-peakon_diagnostics_N512.csv", "utf8"), "d.csv");
    expect(d.t[0]).toBe(0);
    expect(d.t[d.t.length - 1]).toBe(10);
    expect(d.mass.length).toBe(d.t.length);
    // mass is conserved to machine precision in the solver output
    const drift = Math.max(...d.mass.map((m) => Math.abs(m - d.mass[0]) / Math.abs(d.mass[0])));
    expect(drift).toBeLessThan(1e-12);
  });

  it("rejects empty cells", () => {
    expect(() => parseDiagnostics("t,mass,energy,l2,linf\n0,,1,1,1\n", "d.csv"))
      .toThrowError(/d\.csv:2: column "mass"/);
  });
});

describe("parseSnapshot", () => {
  it("reads a real snapshot", () => {
    const s = parseSnapshot(readFileSync(FIX + "ex2-peakon_t10_N512.csv", "utf8"), "s.csv");
    expect(s.x.length).toBe(3 * 512 + 1);
    const peakX = s.x[s.u.indexOf(Math.max(...s.u))];
    expect(Math.abs(peakX - 35)).toBeLessThan(0.5); // peakon moved to x = 35 at t = 10
  });
});
