/**
 * Producer and observer connections to the gesturequad server.
 * Observer messages are parsed and validated before they reach the
 * state reducer; anything that fails validation is dropped.
 */

import { parseTelemetry, type TelemetryMessage } from "./protocol.js";
import type { ConnectionStatus } from "./state.js";

export interface SocketCallbacks {
  onStatus: (status: ConnectionStatus) => void;
  onTelemetry: (message: TelemetryMessage) => void;
}

export class ServerLink {
  private producer: WebSocket | null = null;
  private observer: WebSocket | null = null;

  constructor(
    private readonly baseUrl: string,
    private readonly callbacks: SocketCallbacks,
  ) {}

  connect(): void {
    this.callbacks.onStatus("connecting");
    this.observer = new WebSocket(`${this.baseUrl}/observe`);
    this.observer.onmessage = (event: MessageEvent) => {
      const message = parseTelemetry(String(event.data));
      if (message) this.callbacks.onTelemetry(message);
    };
    this.observer.onclose = () => this.callbacks.onStatus("disconnected");

    this.producer = new WebSocket(`${this.baseUrl}/produce`);
    this.producer.onopen = () => this.callbacks.onStatus("connected");
    this.producer.onclose = () => this.callbacks.onStatus("disconnected");
  }

  get ready(): boolean {
    return this.producer !== null && this.producer.readyState === WebSocket.OPEN;
  }

  sendFrame(message: object): void {
    if (this.ready) {
      this.producer!.send(JSON.stringify(message));
    }
  }

  close(): void {
    this.producer?.close();
    this.observer?.close();
    this.producer = null;
    this.observer = null;
  }
}

export function defaultServerUrl(): string {
  const params = new URLSearchParams(window.location.search);
  const explicit = params.get("server");
  if (explicit) return explicit;
  const host = window.location.hostname || "127.0.0.1";
  return `ws://${host}:8765`;
}
