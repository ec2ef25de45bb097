// Transcript model for the spoken-feedback panel.

import type { Severity, UtterMessage } from "./protocol.js"

export interface TranscriptEntry {
  text: string
  severity: Severity
  templateId: string
}

export function entryFromUtter(message: UtterMessage): TranscriptEntry {
  return {
    text: message.text,
    severity: message.severity,
    templateId: message.template_id,
  }
}

export class TranscriptModel {
  readonly entries: TranscriptEntry[] = []

  push(message: UtterMessage): TranscriptEntry {
    const entry = entryFromUtter(message)
    this.entries.push(entry)
    return entry
  }

  last(): TranscriptEntry | undefined {
    return this.entries[this.entries.length - 1]
  }

  /** Newest-first search, e.g. for "did a readback arrive?". */
  findLast(templateId: string): TranscriptEntry | undefined {
    for (let i = this.entries.length - 1; i >= 0; i -= 1) {
      if (this.entries[i].templateId === templateId) return this.entries[i]
    }
    return undefined
  }
}
