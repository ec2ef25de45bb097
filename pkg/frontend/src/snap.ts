// Pixel-to-cell math. All gestures snap to whole cells before any message is
// sent; the engine never sees fractional coordinates.

import type { Footprint } from "./protocol.js"

export interface GridMetrics {
  rows: number
  cols: number
  cellPx: number
}

export const MIN_SPAN = 2

const clamp = (v: number, lo: number, hi: number) => Math.min(hi, Math.max(lo, v))

/** 1-based cell under a point, clamped onto the board. */
export function cellFromPoint(x: number, y: number, m: GridMetrics): { row: number; col: number } {
  return {
    row: clamp(Math.floor(y / m.cellPx) + 1, 1, m.rows),
    col: clamp(Math.floor(x / m.cellPx) + 1, 1, m.cols),
  }
}

/** Snap a dragged rectangle to a legal footprint (whole cells, minimum span). */
export function footprintFromRect(
  x0: number,
  y0: number,
  x1: number,
  y1: number,
  m: GridMetrics,
): Footprint {
  const a = cellFromPoint(Math.min(x0, x1), Math.min(y0, y1), m)
  const b = cellFromPoint(Math.max(x0, x1), Math.max(y0, y1), m)
  const fp = {
    row: a.row,
    col: a.col,
    rowSpan: b.row - a.row + 1,
    colSpan: b.col - a.col + 1,
  }
  return clampFootprint(fp, m)
}

/** Force a footprint into bounds with at least the minimum span. */
export function clampFootprint(fp: Footprint, m: GridMetrics): Footprint {
  const rowSpan = clamp(fp.rowSpan, MIN_SPAN, m.rows)
  const colSpan = clamp(fp.colSpan, MIN_SPAN, m.cols)
  return {
    row: clamp(fp.row, 1, m.rows - rowSpan + 1),
    col: clamp(fp.col, 1, m.cols - colSpan + 1),
    rowSpan,
    colSpan,
  }
}

/** Move a footprint by whole cells, staying on the board. */
export function movedFootprint(fp: Footprint, dRow: number, dCol: number, m: GridMetrics): Footprint {
  return clampFootprint({ ...fp, row: fp.row + dRow, col: fp.col + dCol }, m)
}

/** Resize by dragging the bottom-right corner to a point. */
export function resizedFootprint(fp: Footprint, x: number, y: number, m: GridMetrics): Footprint {
  const corner = cellFromPoint(x, y, m)
  return clampFootprint(
    {
      row: fp.row,
      col: fp.col,
      rowSpan: corner.row - fp.row + 1,
      colSpan: corner.col - fp.col + 1,
    },
    m,
  )
}

export function sameFootprint(a: Footprint, b: Footprint): boolean {
  return a.row === b.row && a.col === b.col && a.rowSpan === b.rowSpan && a.colSpan === b.colSpan
}

/** Cell distance a pointer has moved; used to tell a hold from a drag. */
export function cellDelta(
  startX: number,
  startY: number,
  x: number,
  y: number,
  m: GridMetrics,
): { dRow: number; dCol: number } {
  return {
    dRow: Math.round((y - startY) / m.cellPx),
    dCol: Math.round((x - startX) / m.cellPx),
  }
}
