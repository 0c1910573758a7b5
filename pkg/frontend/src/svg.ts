/** SVG backend: serialize a scene to a standalone .svg document. */

import { Primitive, Scene } from "./scene.js";

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function fmt(v: number): string {
  return Number(v.toFixed(2)).toString();
}

function prim(p: Primitive): string {
  switch (p.kind) {
    case "rect":
      return `<rect x="${fmt(p.x)}" y="${fmt(p.y)}" width="${fmt(p.w)}" height="${fmt(p.h)}" fill="${p.fill}"/>`;
    case "line": {
      const dash = p.dash ? ' stroke-dasharray="6 4"' : "";
      return `<line x1="${fmt(p.x1)}" y1="${fmt(p.y1)}" x2="${fmt(p.x2)}" y2="${fmt(p.y2)}" stroke="${p.color}" stroke-width="${p.width ?? 1}"${dash}/>`;
    }
    case "polyline": {
      const pts = p.points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
      const dash = p.dash ? ' stroke-dasharray="6 4"' : "";
      return `<polyline points="${pts}" fill="none" stroke="${p.color}" stroke-width="${p.width ?? 1.5}"${dash}/>`;
    }
    case "marker":
      return `<circle cx="${fmt(p.x)}" cy="${fmt(p.y)}" r="${(p.size ?? 3).toFixed(1)}" fill="${p.color}"/>`;
    case "text": {
      const anchor = p.anchor ?? "start";
      const size = p.size ?? 12;
      const color = p.color ?? "#222222";
      return `<text x="${fmt(p.x)}" y="${fmt(p.y)}" font-family="Helvetica, Arial, sans-serif" font-size="${size}" text-anchor="${anchor}" fill="${color}">${esc(p.text)}</text>`;
    }
  }
}

export function sceneToSvg(scene: Scene): string {
  const body = scene.prims.map(prim).join("\n  ");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${scene.width}" height="${scene.height}" ` +
    `viewBox="0 0 ${scene.width} ${scene.height}">\n  ${body}\n</svg>\n`
  );
}
