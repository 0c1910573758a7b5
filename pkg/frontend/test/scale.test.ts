import { describe, expect, it } from "vitest";

import { formatTick, linearScale, linearTicks, logScale, logTicks } from "../src/scale.js";

describe("linearScale", () => {
  it("maps the domain endpoints to the range endpoints", () => {
    const s = linearScale([0, 10], [100, 500]);
    expect(s(0)).toBe(100);
    expect(s(10)).toBe(500);
    expect(s(5)).toBe(300);
  });

  it("survives a degenerate domain", () => {
    const s = linearScale([3, 3], [0, 100]);
    expect(Number.isFinite(s(3))).toBe(true);
  });
});

describe("logScale", () => {
  it("is linear in the exponent", () => {
    const s = logScale([1, 1e4], [0, 400]);
    expect(s(1)).toBeCloseTo(0);
    expect(s(100)).toBeCloseTo(200);
    expect(s(1e4)).toBeCloseTo(400);
  });

  it("rejects non-positive domains", () => {
    expect(() => logScale([0, 1], [0, 1])).toThrowError(/positive/);
  });
});

describe("ticks", () => {
  it("linear ticks land on 1/2/5 multiples", () => {
    expect(linearTicks(0, 10)).toEqual([0, 2, 4, 6, 8, 10]);
    expect(linearTicks(0, 1)).toEqual([0, 0.2, 0.4, 0.6000000000000001, 0.8, 1]);
  });

  it("log ticks are decades and get thinned on wide ranges", () => {
    expect(logTicks(1, 1000)).toEqual([1, 10, 100, 1000]);
    const wide = logTicks(1e-12, 1);
    expect(wide.length).toBeLessThanOrEqual(8);
    for (const t of wide) expect(Math.log10(t) % 1).toBeCloseTo(0);
  });

  it("formats log ticks as powers of ten", () => {
    expect(formatTick(1e-5, "log")).toBe("1e-5");
    expect(formatTick(100, "log")).toBe("1e2");
    expect(formatTick(0.4, "linear")).toBe("0.4");
  });
});
