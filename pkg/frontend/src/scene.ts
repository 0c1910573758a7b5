/** Backend-independent description of a figure: a flat list of primitives.
 *
 * Figures are assembled as scenes and serialized by the SVG or PNG backend,
 * so both outputs come from identical geometry.
 */

export type Anchor = "start" | "middle" | "end";

export type Primitive =
  | { kind: "rect"; x: number; y: number; w: number; h: number; fill: string }
  | {
      kind: "line";
      x1: number;
      y1: number;
      x2: number;
      y2: number;
      color: string;
      width?: number;
      dash?: boolean;
    }
  | {
      kind: "polyline";
      points: [number, number][];
      color: string;
      width?: number;
      dash?: boolean;
    }
  | { kind: "marker"; x: number; y: number; color: string; size?: number }
  | {
      kind: "text";
      x: number;
      y: number;
      text: string;
      size?: number;
      anchor?: Anchor;
      color?: string;
    };

export interface Scene {
  width: number;
  height: number;
  prims: Primitive[];
}

export const PALETTE = ["#1f6fb4", "#d1495b", "#3a7d44", "#8857a3", "#c77d2c", "#4a4a4a"];
