// DOM wiring for the virtual baseboard. The engine is the single source of
// truth: the board and preview redraw only from render broadcasts, selection
// highlights only from vibrate messages, and every gesture or typed line
// turns into exactly one wire message.

import { BoardMirror } from "./boardMirror.js"
import { EngineClient, defaultServerUrl } from "./client.js"
import { GestureController } from "./gestures.js"
import type { BracketView } from "./layout.js"
import { LONG_PRESS_HINT_MS } from "./pressTimer.js"
import {
  commandMessage,
  mediaSelectedMessage,
  removeMessage,
  type EngineMessage,
  type MediaKind,
} from "./protocol.js"
import { TranscriptModel } from "./transcript.js"

const CELL_PX = 34

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id)
  if (!el) throw new Error(`missing #${id}`)
  return el as T
}

const boardEl = $("board")
const ghostEl = $("ghost")
const holdEl = $("hold-indicator")
const transcriptEl = $("transcript")
const statusEl = $("status")
const previewEl = $("preview") as HTMLIFrameElement
const commandEl = $("command") as HTMLInputElement
const liftBtn = $("lift") as HTMLButtonElement
const fileEl = $("file") as HTMLInputElement
const speakEl = $("speak") as HTMLInputElement

const mirror = new BoardMirror()
const transcript = new TranscriptModel()
const gestures = new GestureController(
  { rows: mirror.rows, cols: mirror.cols, cellPx: CELL_PX },
  () => mirror.nextUnitId(),
)

let selectedUnit: string | null = null
let mediaTarget: string | null = null

const client = new EngineClient(defaultServerUrl(), {
  onOpen: () => {
    statusEl.textContent = "connected"
    statusEl.className = "ok"
  },
  onClose: () => {
    statusEl.textContent = "disconnected"
    statusEl.className = "bad"
  },
  onMessage: handleMessage,
})

function handleMessage(message: EngineMessage): void {
  if (message.msg === "render") {
    if (!mirror.apply(message)) return
    gestures.metrics = { rows: mirror.rows, cols: mirror.cols, cellPx: CELL_PX }
    drawBoard()
    previewEl.srcdoc = mirror.html
    return
  }
  if (message.msg === "utter") {
    const entry = transcript.push(message)
    const line = document.createElement("div")
    line.className = `utter ${entry.severity}`
    line.textContent = entry.text
    line.title = entry.templateId
    transcriptEl.append(line)
    transcriptEl.scrollTop = transcriptEl.scrollHeight
    if (speakEl.checked && "speechSynthesis" in window) {
      window.speechSynthesis.speak(new SpeechSynthesisUtterance(entry.text))
    }
    return
  }
  if (message.msg === "vibrate") {
    selectedUnit = message.unit
    liftBtn.disabled = false
    drawBoard()
    const el = boardEl.querySelector(`[data-unit="${CSS.escape(message.unit)}"]`)
    el?.classList.add("pulse")
    setTimeout(() => el?.classList.remove("pulse"), 350)
    return
  }
  if (message.msg === "open_media_picker") {
    mediaTarget = message.unit
    fileEl.value = ""
    fileEl.click()
    return
  }
  const line = document.createElement("div")
  line.className = "utter error"
  line.textContent = `[${message.code}] ${message.message}`
  transcriptEl.append(line)
}

function drawBoard(): void {
  boardEl.style.gridTemplateRows = `repeat(${mirror.rows}, ${CELL_PX}px)`
  boardEl.style.gridTemplateColumns = `repeat(${mirror.cols}, ${CELL_PX}px)`
  boardEl.querySelectorAll(".bracket").forEach((el) => el.remove())
  for (const view of mirror.brackets) {
    const el = document.createElement("div")
    el.className = `bracket kind-${view.kind}`
    if (view.unit === selectedUnit) el.classList.add("selected")
    el.dataset.unit = view.unit
    el.style.gridRow = `${view.footprint.row} / span ${view.footprint.rowSpan}`
    el.style.gridColumn = `${view.footprint.col} / span ${view.footprint.colSpan}`
    const label = document.createElement("span")
    label.textContent = `${view.unit} (${view.kind})`
    el.append(label)
    const handle = document.createElement("div")
    handle.className = "handle"
    el.append(handle)
    boardEl.append(el)
  }
  if (selectedUnit && !mirror.get(selectedUnit)) {
    selectedUnit = null
    liftBtn.disabled = true
  }
}

function drawGhost(): void {
  const fp = gestures.ghost()
  if (!fp) {
    ghostEl.style.display = "none"
    return
  }
  ghostEl.style.display = "block"
  ghostEl.style.gridRow = `${fp.row} / span ${fp.rowSpan}`
  ghostEl.style.gridColumn = `${fp.col} / span ${fp.colSpan}`
}

function boardPoint(event: PointerEvent): { x: number; y: number } {
  const rect = boardEl.getBoundingClientRect()
  return { x: event.clientX - rect.left, y: event.clientY - rect.top }
}

boardEl.addEventListener("pointerdown", (event) => {
  const { x, y } = boardPoint(event)
  const target = event.target as HTMLElement
  const bracketEl = target.closest<HTMLElement>(".bracket")
  if (bracketEl) {
    const view = mirror.get(bracketEl.dataset.unit ?? "")
    if (!view) return
    if (target.classList.contains("handle")) {
      gestures.pointerDownResizeHandle(view, x, y)
    } else {
      gestures.pointerDownBracket(view, x, y)
    }
  } else {
    gestures.pointerDownEmpty(x, y)
  }
  boardEl.setPointerCapture(event.pointerId)
  drawGhost()
})

boardEl.addEventListener("pointermove", (event) => {
  const { x, y } = boardPoint(event)
  gestures.pointerMove(x, y)
  drawGhost()
})

boardEl.addEventListener("pointerup", (event) => {
  const { x, y } = boardPoint(event)
  const finished = gestures.pointerUp(x, y)
  drawGhost()
  holdEl.textContent = ""
  if (finished.message) client.send(finished.message)
})

boardEl.addEventListener("pointercancel", () => {
  gestures.cancel()
  drawGhost()
  holdEl.textContent = ""
})

// On-screen hold timer so a user can see the long-press threshold approach.
setInterval(() => {
  if (!gestures.holding) return
  const held = gestures.heldFor()
  const mark = held >= LONG_PRESS_HINT_MS ? " (readback)" : ""
  holdEl.textContent = `holding ${(held / 1000).toFixed(1)}s${mark}`
}, 100)

for (const button of document.querySelectorAll<HTMLButtonElement>("[data-palette]")) {
  button.addEventListener("click", () => {
    const kind = button.dataset.palette as "text" | "image" | "video"
    gestures.armPalette(gestures.armed === kind ? null : kind)
    for (const other of document.querySelectorAll("[data-palette]")) {
      other.classList.toggle("armed", other === button && gestures.armed !== null)
    }
  })
}

liftBtn.addEventListener("click", () => {
  if (selectedUnit) client.send(removeMessage(selectedUnit))
})

commandEl.addEventListener("keydown", (event) => {
  if (event.key !== "Enter") return
  const text = commandEl.value.trim()
  if (!text) return
  client.send(commandMessage(text))
  commandEl.value = ""
})

function probeDimensions(file: File, kind: MediaKind): Promise<{ width: number; height: number }> {
  const url = URL.createObjectURL(file)
  return new Promise((resolve, reject) => {
    if (kind === "image") {
      const img = new Image()
      img.onload = () => resolve({ width: img.naturalWidth, height: img.naturalHeight })
      img.onerror = () => reject(new Error("unreadable image"))
      img.src = url
    } else {
      const video = document.createElement("video")
      video.onloadedmetadata = () => resolve({ width: video.videoWidth, height: video.videoHeight })
      video.onerror = () => reject(new Error("unreadable video"))
      video.src = url
    }
  })
}

fileEl.addEventListener("change", async () => {
  const file = fileEl.files?.[0]
  const unit = mediaTarget
  mediaTarget = null
  if (!file || !unit) return
  const view = mirror.get(unit)
  const kind: MediaKind = view?.kind === "video" ? "video" : "image"
  try {
    const { width, height } = await probeDimensions(file, kind)
    const uri = URL.createObjectURL(file)
    client.send(mediaSelectedMessage(unit, kind, uri, width, height, file.name))
  } catch {
    client.send(mediaSelectedMessage(unit, kind, "", 0, 0, file.name))
  }
})

drawBoard()
