// End to end against the real engine: spawn the server, speak WebSocket, and
// check the acceptance behaviors (gesture messages round-trip, a long hold
// yields a readback line, renders arrive fast, a reload reconverges).

import { spawn, type ChildProcess } from "node:child_process"
import { afterAll, beforeAll, describe, expect, it } from "vitest"

import { BoardMirror } from "../src/boardMirror.js"
import { encode, placeMessage, touchMessage, type RenderMessage, type UtterMessage } from "../src/protocol.js"
import { TranscriptModel } from "../src/transcript.js"
import { WsTestClient } from "./wsclient.js"

let proc: ChildProcess
let host = "127.0.0.1"
let port = 0

beforeAll(async () => {
  proc = spawn("python3", ["-m", "gridsite", "serve", "--listen", "127.0.0.1:0"], {
    cwd: new URL("../..", import.meta.url).pathname,
    stdio: ["ignore", "ignore", "pipe"],
  })
  const address = await new Promise<string>((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error("engine did not start")), 15000)
    let err = ""
    proc.stderr!.on("data", (chunk: Buffer) => {
      err += chunk.toString()
      const match = /listening on ([\d.]+):(\d+)/.exec(err)
      if (match) {
        clearTimeout(timer)
        resolve(`${match[1]}:${match[2]}`)
      }
    })
    proc.on("exit", () => reject(new Error(`engine exited early: ${err}`)))
  })
  ;[host, port] = [address.split(":")[0], Number(address.split(":")[1])]
}, 20000)

afterAll(() => {
  proc?.kill()
})

describe("virtual board against the live engine", () => {
  it("walks the whole flow: join, place, hold, reload", async () => {
    const client = await WsTestClient.connect(host, port)
    const mirror = new BoardMirror()
    const transcript = new TranscriptModel()

    // Joining snapshot arrives before anything is sent.
    const snapshot = (await client.nextOfKind("render")) as unknown as RenderMessage
    expect(mirror.apply(snapshot)).toBe(true)
    expect(mirror.brackets).toHaveLength(0)

    // A palette drop's message round-trips into an announcement and a render.
    const sentAt = Date.now()
    client.send(encode(placeMessage("u1", "text", { row: 1, col: 3, rowSpan: 2, colSpan: 8 })))
    const placedUtter = (await client.nextOfKind("utter")) as unknown as UtterMessage
    transcript.push(placedUtter)
    expect(placedUtter.text).toBe(
      "Text bracket detected, size 2 by 8, location at row 1 and column 3.",
    )
    const render = (await client.nextOfKind("render")) as unknown as RenderMessage
    expect(Date.now() - sentAt).toBeLessThan(1000)
    expect(mirror.apply(render)).toBe(true)
    expect(mirror.get("u1")?.footprint).toEqual({ row: 1, col: 3, rowSpan: 2, colSpan: 8 })

    // Holding at or past three seconds produces a readback line.
    client.send(encode(touchMessage("u1", 3200)))
    const vibrate = await client.nextOfKind("vibrate")
    expect(vibrate.unit).toBe("u1")
    const readback = (await client.nextOfKind("utter")) as unknown as UtterMessage
    transcript.push(readback)
    expect(transcript.findLast("readback")?.text).toContain("Text bracket, size 2 by 8")

    // A reload (fresh client) reconverges on the same board from its snapshot.
    const reloaded = await WsTestClient.connect(host, port)
    const freshMirror = new BoardMirror()
    freshMirror.apply((await reloaded.nextOfKind("render")) as unknown as RenderMessage)
    expect(freshMirror.brackets).toEqual(mirror.brackets)
    expect(freshMirror.revision).toBe(mirror.revision)

    reloaded.close()
    client.close()
  }, 20000)

  it("a short tap only vibrates, and errors come back as error messages", async () => {
    const client = await WsTestClient.connect(host, port)
    await client.nextOfKind("render")
    client.send(encode(touchMessage("u1", 400)))
    const vibrate = await client.nextOfKind("vibrate")
    expect(vibrate.pattern).toBe("select")
    client.send("{broken json")
    const error = await client.nextOfKind("error")
    expect(error.code).toBe("bad_message")
    client.close()
  }, 20000)
})
