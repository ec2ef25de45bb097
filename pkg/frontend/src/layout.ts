// Recover bracket views from the engine's rendered page. The render message
// is the authoritative board state; the UI never keeps its own.

import type { BracketKind, Footprint } from "./protocol.js"

export interface BracketView {
  unit: string
  kind: BracketKind
  footprint: Footprint
}

const SECTION_RE =
  /<section class="bracket bracket-(text|image|video)" data-unit="([^"]*)" style="grid-row: (\d+) \/ span (\d+); grid-column: (\d+) \/ span (\d+);">/g

const GRID_RE = /<main class="board-grid" data-rows="(\d+)" data-cols="(\d+)">/

function unescapeHtml(text: string): string {
  return text
    .replace(/&quot;/g, '"')
    .replace(/&#x27;/g, "'")
    .replace(/&lt;/g, "<")
    .replace(/&gt;/g, ">")
    .replace(/&amp;/g, "&")
}

export function parseGridSize(html: string): { rows: number; cols: number } | null {
  const m = GRID_RE.exec(html)
  if (!m) return null
  return { rows: Number(m[1]), cols: Number(m[2]) }
}

export function parseLayout(html: string): BracketView[] {
  const views: BracketView[] = []
  for (const m of html.matchAll(SECTION_RE)) {
    views.push({
      kind: m[1] as BracketKind,
      unit: unescapeHtml(m[2]),
      footprint: {
        row: Number(m[3]),
        rowSpan: Number(m[4]),
        col: Number(m[5]),
        colSpan: Number(m[6]),
      },
    })
  }
  return views
}
