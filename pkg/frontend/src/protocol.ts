// Wire protocol types and message builders. Field names must match the engine
// byte for byte; every user gesture maps to exactly one of these messages.

export type Severity = "info" | "warning" | "error"
export type BracketKind = "text" | "image" | "video"
export type MediaKind = "image" | "video"

export interface Footprint {
  row: number
  col: number
  rowSpan: number
  colSpan: number
}

export interface UtterMessage {
  msg: "utter"
  text: string
  severity: Severity
  template_id: string
}

export interface RenderMessage {
  msg: "render"
  revision: number
  html: string
}

export interface VibrateMessage {
  msg: "vibrate"
  unit: string
  pattern: string
}

export interface OpenMediaPickerMessage {
  msg: "open_media_picker"
  unit: string
}

export interface ErrorMessage {
  msg: "error"
  code: string
  message: string
}

export type EngineMessage =
  | UtterMessage
  | RenderMessage
  | VibrateMessage
  | OpenMediaPickerMessage
  | ErrorMessage

export function decodeEngineMessage(raw: string): EngineMessage | null {
  let obj: unknown
  try {
    obj = JSON.parse(raw)
  } catch {
    return null
  }
  if (typeof obj !== "object" || obj === null) return null
  const msg = (obj as { msg?: unknown }).msg
  if (
    msg === "utter" ||
    msg === "render" ||
    msg === "vibrate" ||
    msg === "open_media_picker" ||
    msg === "error"
  ) {
    return obj as EngineMessage
  }
  return null
}

export function placeMessage(unit: string, kind: BracketKind, fp: Footprint) {
  return {
    msg: "place",
    unit,
    type: kind,
    row: fp.row,
    col: fp.col,
    row_span: fp.rowSpan,
    col_span: fp.colSpan,
  }
}

export function reshapeMessage(unit: string, fp: Footprint) {
  return {
    msg: "reshape",
    unit,
    row: fp.row,
    col: fp.col,
    row_span: fp.rowSpan,
    col_span: fp.colSpan,
  }
}

export function removeMessage(unit: string) {
  return { msg: "remove", unit }
}

export function touchMessage(unit: string, durationMs: number) {
  return { msg: "touch", unit, duration_ms: Math.max(0, Math.round(durationMs)) }
}

export function commandMessage(text: string) {
  return { msg: "command", text }
}

export function mediaSelectedMessage(
  unit: string,
  kind: MediaKind,
  uri: string,
  width: number,
  height: number,
  alt?: string,
) {
  return { msg: "media_selected", unit, kind, uri, width, height, alt: alt ?? null }
}

export function encode(message: object): string {
  return JSON.stringify(message)
}
