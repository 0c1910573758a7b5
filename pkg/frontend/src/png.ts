/** PNG backend: a small software rasterizer plus a stock PNG encoder.
 *
 * Lines are drawn with Bresenham stepping, text with the bundled 5x7 bitmap
 * font; the encoder writes one 8-bit RGB IDAT chunk deflated with node's
 * zlib, so the backend has no native or npm dependencies.
 */

import { deflateSync } from "node:zlib";

import { GLYPH_H, GLYPH_W, glyph } from "./font.js";
import { Anchor, Primitive, Scene } from "./scene.js";

class Raster {
  readonly w: number;
  readonly h: number;
  readonly data: Uint8Array;

  constructor(w: number, h: number) {
    this.w = w;
    this.h = h;
    this.data = new Uint8Array(w * h * 3).fill(255);
  }

  set(x: number, y: number, rgb: [number, number, number]) {
    x = Math.round(x);
    y = Math.round(y);
    if (x < 0 || y < 0 || x >= this.w || y >= this.h) return;
    const i = (y * this.w + x) * 3;
    this.data[i] = rgb[0];
    this.data[i + 1] = rgb[1];
    this.data[i + 2] = rgb[2];
  }

  dot(x: number, y: number, rgb: [number, number, number], size: number) {
    const r = Math.max(0, Math.floor(size / 2));
    for (let dy = -r; dy <= r; dy++) {
      for (let dx = -r; dx <= r; dx++) {
        this.set(x + dx, y + dy, rgb);
      }
    }
  }

  line(
    x1: number, y1: number, x2: number, y2: number,
    rgb: [number, number, number], width: number, dash: boolean,
  ) {
    const steps = Math.max(1, Math.ceil(Math.max(Math.abs(x2 - x1), Math.abs(y2 - y1))));
    for (let s = 0; s <= steps; s++) {
      if (dash && s % 10 >= 6) continue;
      const t = s / steps;
      this.dot(x1 + t * (x2 - x1), y1 + t * (y2 - y1), rgb, width);
    }
  }

  text(x: number, y: number, s: string, size: number, anchor: Anchor, rgb: [number, number, number]) {
    const scale = Math.max(1, Math.round(size / 8));
    const adv = (GLYPH_W + 1) * scale;
    const total = s.length * adv;
    let x0 = Math.round(anchor === "middle" ? x - total / 2 : anchor === "end" ? x - total : x);
    const y0 = Math.round(y - GLYPH_H * scale); // callers pass the text baseline
    for (const ch of s) {
      const cols = glyph(ch);
      for (let cx = 0; cx < GLYPH_W; cx++) {
        for (let cy = 0; cy < GLYPH_H; cy++) {
          if ((cols[cx] >> cy) & 1) {
            for (let sy = 0; sy < scale; sy++) {
              for (let sx = 0; sx < scale; sx++) {
                this.set(x0 + cx * scale + sx, y0 + cy * scale + sy, rgb);
              }
            }
          }
        }
      }
      x0 += adv;
    }
  }
}

function colorToRgb(c: string): [number, number, number] {
  if (c.startsWith("#") && c.length === 7) {
    return [
      parseInt(c.slice(1, 3), 16),
      parseInt(c.slice(3, 5), 16),
      parseInt(c.slice(5, 7), 16),
    ];
  }
  const named: Record<string, [number, number, number]> = {
    white: [255, 255, 255],
    black: [0, 0, 0],
    none: [255, 255, 255],
  };
  return named[c] ?? [34, 34, 34];
}

function draw(r: Raster, p: Primitive) {
  switch (p.kind) {
    case "rect": {
      const rgb = colorToRgb(p.fill);
      for (let y = Math.round(p.y); y < Math.round(p.y + p.h); y++) {
        for (let x = Math.round(p.x); x < Math.round(p.x + p.w); x++) {
          r.set(x, y, rgb);
        }
      }
      return;
    }
    case "line":
      r.line(p.x1, p.y1, p.x2, p.y2, colorToRgb(p.color), p.width ?? 1, p.dash ?? false);
      return;
    case "polyline": {
      const rgb = colorToRgb(p.color);
      for (let i = 1; i < p.points.length; i++) {
        const [x1, y1] = p.points[i - 1];
        const [x2, y2] = p.points[i];
        r.line(x1, y1, x2, y2, rgb, p.width ?? 2, p.dash ?? false);
      }
      return;
    }
    case "marker":
      r.dot(p.x, p.y, colorToRgb(p.color), p.size ?? 4);
      return;
    case "text":
      r.text(p.x, p.y, p.text, p.size ?? 12, p.anchor ?? "start", colorToRgb(p.color ?? "#222222"));
      return;
  }
}

// -- PNG container ----------------------------------------------------------

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(buf: Uint8Array): number {
  let c = 0xffffffff;
  for (const b of buf) c = CRC_TABLE[(c ^ b) & 0xff] ^ (c >>> 8);
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, body: Uint8Array): Buffer {
  const head = Buffer.alloc(8);
  head.writeUInt32BE(body.length, 0);
  head.write(type, 4, "ascii");
  const crcBuf = Buffer.alloc(4);
  crcBuf.writeUInt32BE(crc32(Buffer.concat([head.subarray(4), body])), 0);
  return Buffer.concat([head, body, crcBuf]);
}

function encodePng(r: Raster): Buffer {
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(r.w, 0);
  ihdr.writeUInt32BE(r.h, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 2; // color type: truecolor
  const raw = Buffer.alloc(r.h * (1 + r.w * 3));
  for (let y = 0; y < r.h; y++) {
    raw[y * (1 + r.w * 3)] = 0; // filter: none
    r.data.subarray(y * r.w * 3, (y + 1) * r.w * 3).forEach((v, i) => {
      raw[y * (1 + r.w * 3) + 1 + i] = v;
    });
  }
  return Buffer.concat([
    Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", ihdr),
    chunk("IDAT", deflateSync(raw)),
    chunk("IEND", new Uint8Array(0)),
  ]);
}

export function sceneToPng(scene: Scene): Buffer {
  const r = new Raster(Math.round(scene.width), Math.round(scene.height));
  for (const p of scene.prims) draw(r, p);
  return encodePng(r);
}
