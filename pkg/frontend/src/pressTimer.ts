// Press-and-hold measurement. The duration is measured here, client side, and
// reported in the touch message; the engine owns the long-press threshold.

export const LONG_PRESS_HINT_MS = 3000

export class PressTimer {
  private startedAt: number | null = null

  constructor(private readonly now: () => number = () => performance.now()) {}

  start(): void {
    this.startedAt = this.now()
  }

  get active(): boolean {
    return this.startedAt !== null
  }

  elapsed(): number {
    if (this.startedAt === null) return 0
    return this.now() - this.startedAt
  }

  /** Stop and return the held duration in whole milliseconds. */
  end(): number {
    const duration = this.elapsed()
    this.startedAt = null
    return Math.round(duration)
  }

  cancel(): void {
    this.startedAt = null
  }
}
