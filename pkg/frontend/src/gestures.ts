// Pointer gestures to wire messages. Pure state machine: feed it pointer
// events, it hands back the single message each finished gesture stands for.
// A hold that never leaves its cell is a touch; crossing a cell boundary
// turns it into a move; palette-armed drags on empty space draw a new
// bracket; corner drags resize.

import type { BracketView } from "./layout.js"
import { PressTimer } from "./pressTimer.js"
import {
  placeMessage,
  reshapeMessage,
  touchMessage,
  type BracketKind,
  type Footprint,
} from "./protocol.js"
import {
  cellDelta,
  footprintFromRect,
  movedFootprint,
  resizedFootprint,
  sameFootprint,
  type GridMetrics,
} from "./snap.js"

type GestureState =
  | { kind: "idle" }
  | { kind: "drawing"; bracketKind: BracketKind; x0: number; y0: number; x1: number; y1: number }
  | { kind: "holding"; unit: string; fp: Footprint; x0: number; y0: number }
  | { kind: "moving"; unit: string; fp: Footprint; x0: number; y0: number; x1: number; y1: number }
  | { kind: "resizing"; unit: string; fp: Footprint; x1: number; y1: number }

export interface FinishedGesture {
  message: object | null
  /** Unit whose gesture just ended, for highlight bookkeeping. */
  unit?: string
}

export class GestureController {
  private state: GestureState = { kind: "idle" }
  armed: BracketKind | null = null

  constructor(
    public metrics: GridMetrics,
    private readonly nextUnit: () => string,
    private readonly timer: PressTimer = new PressTimer(),
  ) {}

  armPalette(kind: BracketKind | null): void {
    this.armed = kind
  }

  get holding(): boolean {
    return this.state.kind === "holding"
  }

  heldFor(): number {
    return this.state.kind === "holding" ? this.timer.elapsed() : 0
  }

  pointerDownEmpty(x: number, y: number): void {
    if (this.armed === null) return
    this.state = { kind: "drawing", bracketKind: this.armed, x0: x, y0: y, x1: x, y1: y }
  }

  pointerDownBracket(view: BracketView, x: number, y: number): void {
    this.timer.start()
    this.state = { kind: "holding", unit: view.unit, fp: view.footprint, x0: x, y0: y }
  }

  pointerDownResizeHandle(view: BracketView, x: number, y: number): void {
    this.state = { kind: "resizing", unit: view.unit, fp: view.footprint, x1: x, y1: y }
  }

  pointerMove(x: number, y: number): void {
    const s = this.state
    if (s.kind === "drawing" || s.kind === "moving" || s.kind === "resizing") {
      s.x1 = x
      s.y1 = y
      return
    }
    if (s.kind === "holding") {
      const { dRow, dCol } = cellDelta(s.x0, s.y0, x, y, this.metrics)
      if (dRow !== 0 || dCol !== 0) {
        this.timer.cancel()
        this.state = { kind: "moving", unit: s.unit, fp: s.fp, x0: s.x0, y0: s.y0, x1: x, y1: y }
      }
    }
  }

  /** The snapped outline to draw while a gesture is in flight. */
  ghost(): Footprint | null {
    const s = this.state
    if (s.kind === "drawing") return footprintFromRect(s.x0, s.y0, s.x1, s.y1, this.metrics)
    if (s.kind === "moving") {
      const { dRow, dCol } = cellDelta(s.x0, s.y0, s.x1, s.y1, this.metrics)
      return movedFootprint(s.fp, dRow, dCol, this.metrics)
    }
    if (s.kind === "resizing") return resizedFootprint(s.fp, s.x1, s.y1, this.metrics)
    return null
  }

  pointerUp(x: number, y: number): FinishedGesture {
    const s = this.state
    this.state = { kind: "idle" }
    if (s.kind === "drawing") {
      this.armed = null
      const fp = footprintFromRect(s.x0, s.y0, x, y, this.metrics)
      return { message: placeMessage(this.nextUnit(), s.bracketKind, fp) }
    }
    if (s.kind === "holding") {
      const { dRow, dCol } = cellDelta(s.x0, s.y0, x, y, this.metrics)
      if (dRow !== 0 || dCol !== 0) {
        this.timer.cancel()
        const fp = movedFootprint(s.fp, dRow, dCol, this.metrics)
        if (sameFootprint(fp, s.fp)) return { message: null, unit: s.unit }
        return { message: reshapeMessage(s.unit, fp), unit: s.unit }
      }
      return { message: touchMessage(s.unit, this.timer.end()), unit: s.unit }
    }
    if (s.kind === "moving") {
      const { dRow, dCol } = cellDelta(s.x0, s.y0, x, y, this.metrics)
      const fp = movedFootprint(s.fp, dRow, dCol, this.metrics)
      if (sameFootprint(fp, s.fp)) return { message: null, unit: s.unit }
      return { message: reshapeMessage(s.unit, fp), unit: s.unit }
    }
    if (s.kind === "resizing") {
      const fp = resizedFootprint(s.fp, x, y, this.metrics)
      if (sameFootprint(fp, s.fp)) return { message: null, unit: s.unit }
      return { message: reshapeMessage(s.unit, fp), unit: s.unit }
    }
    return { message: null }
  }

  cancel(): void {
    this.timer.cancel()
    this.state = { kind: "idle" }
  }
}
