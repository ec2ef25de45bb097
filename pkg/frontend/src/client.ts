// Thin WebSocket wrapper: one socket, decoded messages fanned to handlers.

import { decodeEngineMessage, encode, type EngineMessage } from "./protocol.js"

export interface EngineHandlers {
  onMessage: (message: EngineMessage) => void
  onOpen?: () => void
  onClose?: () => void
}

export class EngineClient {
  private socket: WebSocket

  constructor(url: string, handlers: EngineHandlers) {
    this.socket = new WebSocket(url)
    this.socket.onopen = () => handlers.onOpen?.()
    this.socket.onclose = () => handlers.onClose?.()
    this.socket.onmessage = (event) => {
      const message = decodeEngineMessage(String(event.data))
      if (message) handlers.onMessage(message)
    }
  }

  get ready(): boolean {
    return this.socket.readyState === WebSocket.OPEN
  }

  send(message: object): void {
    if (this.ready) this.socket.send(encode(message))
  }

  close(): void {
    this.socket.close()
  }
}

export function defaultServerUrl(): string {
  const params = new URLSearchParams(window.location.search)
  return params.get("server") ?? "ws://127.0.0.1:7777"
}
