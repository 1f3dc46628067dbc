// Strip-view geometry: the universal cover drawn two fundamental domains
// wide.  Outer marked point i lifts to x = inner*i (+ k periods), inner
// point j to x = outer*j; the deck period is outer*inner.  All outputs are
// plain numbers derived deterministically from the state.

import type { ArcDoc } from "./types.js";

export interface StripLayout {
  width: number;
  height: number;
  marginX: number;
  marginY: number;
  domains: number;
  period: number;
  pixelsPerUnit: number;
}

export function makeLayout(outer: number, inner: number, domains = 2): StripLayout {
  const period = outer * inner;
  const width = 720;
  const marginX = 40;
  const marginY = 30;
  return {
    width,
    height: 320,
    marginX,
    marginY,
    domains,
    period,
    pixelsPerUnit: (width - 2 * marginX) / (period * domains),
  };
}

export function xPixel(layout: StripLayout, stripX: number): number {
  return layout.marginX + stripX * layout.pixelsPerUnit;
}

export function topY(layout: StripLayout): number {
  return layout.marginY;
}

export function bottomY(layout: StripLayout): number {
  return layout.height - layout.marginY;
}

function coreY(layout: StripLayout): number {
  return (topY(layout) + bottomY(layout)) / 2;
}

export interface MarkedPointGlyph {
  boundary: "outer" | "inner";
  index: number;
  x: number;
  y: number;
}

export function markedPoints(
  layout: StripLayout,
  outer: number,
  inner: number,
): MarkedPointGlyph[] {
  const glyphs: MarkedPointGlyph[] = [];
  for (let k = 0; k < layout.domains; k += 1) {
    for (let i = 0; i < outer; i += 1) {
      glyphs.push({
        boundary: "outer",
        index: i,
        x: xPixel(layout, inner * i + layout.period * k),
        y: topY(layout),
      });
    }
    for (let j = 0; j < inner; j += 1) {
      glyphs.push({
        boundary: "inner",
        index: j,
        x: xPixel(layout, outer * j + layout.period * k),
        y: bottomY(layout),
      });
    }
  }
  return glyphs;
}

function visibleShifts(layout: StripLayout, minX: number, maxX: number): number[] {
  const shifts: number[] = [];
  const windowMax = layout.period * layout.domains;
  for (let k = -layout.domains - 2; k <= layout.domains + 2; k += 1) {
    const lo = minX + layout.period * k;
    const hi = maxX + layout.period * k;
    if (hi >= 0 && lo <= windowMax) {
      shifts.push(layout.period * k);
    }
  }
  return shifts;
}

/** SVG path strings for every lift of the arc visible in the strip window. */
export function arcPaths(
  arc: ArcDoc,
  outer: number,
  inner: number,
  layout: StripLayout,
): string[] {
  const paths: string[] = [];
  if (arc.kind === "bridging") {
    const topX = inner * arc.outer;
    const botX = outer * (arc.inner + inner * arc.winding);
    for (const shift of visibleShifts(layout, Math.min(topX, botX), Math.max(topX, botX))) {
      paths.push(
        `M ${xPixel(layout, topX + shift).toFixed(2)} ${topY(layout)}` +
          ` L ${xPixel(layout, botX + shift).toFixed(2)} ${bottomY(layout)}`,
      );
    }
    return paths;
  }
  if (arc.kind === "peripheral") {
    const scale = arc.boundary === "outer" ? inner : outer;
    const count = arc.boundary === "outer" ? outer : inner;
    const left = scale * arc.start;
    const right = scale * (arc.start + arc.span);
    const anchorY = arc.boundary === "outer" ? topY(layout) : bottomY(layout);
    const sign = arc.boundary === "outer" ? 1 : -1;
    const depth = sign * (30 + (arc.span / count) * 80);
    for (const shift of visibleShifts(layout, left, right)) {
      const x0 = xPixel(layout, left + shift);
      const x1 = xPixel(layout, right + shift);
      paths.push(
        `M ${x0.toFixed(2)} ${anchorY} Q ${((x0 + x1) / 2).toFixed(2)} ${(
          anchorY + depth
        ).toFixed(2)} ${x1.toFixed(2)} ${anchorY}`,
      );
    }
    return paths;
  }
  // asymptotic: polyline stepping toward the core, kept on its own side
  const scale = arc.boundary === "outer" ? inner : outer;
  const anchor = scale * arc.index;
  const anchorY = arc.boundary === "outer" ? topY(layout) : bottomY(layout);
  const dir = arc.spiral === "ccw" ? 1 : -1;
  const target = coreY(layout) + (arc.boundary === "outer" ? -6 : 6);
  for (const shift of visibleShifts(layout, anchor, anchor + dir * layout.period * 2)) {
    const segments: string[] = [`M ${xPixel(layout, anchor + shift).toFixed(2)} ${anchorY}`];
    for (let t = 1; t <= 6; t += 1) {
      const x = anchor + shift + (dir * layout.period * t) / 3;
      const y = anchorY + (target - anchorY) * (1 - 0.5 ** t);
      segments.push(`L ${xPixel(layout, x).toFixed(2)} ${y.toFixed(2)}`);
    }
    paths.push(segments.join(" "));
  }
  return paths;
}

export function corePath(layout: StripLayout): string {
  const y = coreY(layout);
  return `M ${layout.marginX} ${y} L ${layout.width - layout.marginX} ${y}`;
}
