// Mirror of the engine's board, rebuilt from each render broadcast. Stale
// revisions are ignored so out-of-order delivery cannot roll the view back.

import { parseGridSize, parseLayout, type BracketView } from "./layout.js"
import type { RenderMessage } from "./protocol.js"

export class BoardMirror {
  revision = -1
  rows = 16
  cols = 12
  brackets: BracketView[] = []
  html = ""

  /** Apply a render message; returns false when it is stale. */
  apply(message: RenderMessage): boolean {
    if (message.revision <= this.revision && this.revision >= 0) return false
    const size = parseGridSize(message.html)
    if (size) {
      this.rows = size.rows
      this.cols = size.cols
    }
    this.revision = message.revision
    this.html = message.html
    this.brackets = parseLayout(message.html)
    return true
  }

  get(unit: string): BracketView | undefined {
    return this.brackets.find((b) => b.unit === unit)
  }

  nextUnitId(): string {
    let i = 1
    while (this.get(`u${i}`)) i += 1
    return `u${i}`
  }
}
