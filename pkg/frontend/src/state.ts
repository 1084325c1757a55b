/**
 * Console state: a pure reducer over connection, telemetry, and capture
 * events. Rendering reads only this; nothing here touches the DOM.
 */

import type { StateMessage, CommandMessage } from "./protocol.js";

export type ConnectionStatus = "connecting" | "connected" | "disconnected";
export type Mode = "body" | "hand";

export interface CaptureStats {
  fps: number;
  confidence: number;
  suppressed: boolean; // last frame below the confidence threshold
}

export interface ConsoleState {
  connection: ConnectionStatus;
  mode: Mode;
  snapshot: StateMessage | null;
  lastCommand: CommandMessage | null;
  capture: CaptureStats;
  trail: Array<[number, number]>; // recent robot positions, world meters
  banner: string | null;
}

export const TRAIL_LIMIT = 400;

export function initialState(mode: Mode = "body"): ConsoleState {
  return {
    connection: "connecting",
    mode,
    snapshot: null,
    lastCommand: null,
    capture: { fps: 0, confidence: 0, suppressed: false },
    trail: [],
    banner: null,
  };
}

export type ConsoleEvent =
  | { kind: "connection"; status: ConnectionStatus }
  | { kind: "telemetry"; message: StateMessage | CommandMessage }
  | { kind: "capture"; stats: CaptureStats }
  | { kind: "permission-denied" }
  | { kind: "toggle-mode" };

export function reduce(state: ConsoleState, event: ConsoleEvent): ConsoleState {
  switch (event.kind) {
    case "connection": {
      const banner =
        event.status === "disconnected"
          ? "connection lost - capture paused"
          : event.status === "connecting"
            ? "connecting..."
            : null;
      return { ...state, connection: event.status, banner };
    }
    case "telemetry": {
      if (event.message.type === "command") {
        return { ...state, lastCommand: event.message };
      }
      const snap = event.message;
      const trail = extendTrail(state.trail, snap.robot.x, snap.robot.y);
      return { ...state, snapshot: snap, trail };
    }
    case "capture":
      return { ...state, capture: event.stats };
    case "permission-denied":
      return { ...state, banner: "camera permission denied - no frames sent" };
    case "toggle-mode": {
      // Mode switches only between courses: never while a timed run is
      // underway (started but not completed).
      if (courseInProgress(state)) {
        return { ...state, banner: "finish the course before switching modes" };
      }
      return { ...state, mode: state.mode === "body" ? "hand" : "body", banner: null };
    }
  }
}

export function courseInProgress(state: ConsoleState): boolean {
  const snap = state.snapshot;
  if (snap === null) return false;
  return snap.course.elapsed_ms > 0 && !snap.course.completed;
}

function extendTrail(
  trail: Array<[number, number]>,
  x: number,
  y: number,
): Array<[number, number]> {
  const last = trail[trail.length - 1];
  if (last && last[0] === x && last[1] === y) return trail;
  const next: Array<[number, number]> = [...trail, [x, y]];
  return next.length > TRAIL_LIMIT ? next.slice(next.length - TRAIL_LIMIT) : next;
}

/** True when a frame should be sent: connected and confident enough. */
export function shouldSendFrame(
  state: ConsoleState,
  confidence: number,
  threshold: number,
): boolean {
  return state.connection === "connected" && confidence >= threshold;
}

/** Fraction of the cooldown ring to fill, 0..1. */
export function cooldownFraction(snapshot: StateMessage | null, cooldownMs: number): number {
  if (!snapshot || snapshot.phase !== "cooldown" || cooldownMs <= 0) return 0;
  return Math.min(1, snapshot.cooldown_ms / cooldownMs);
}

export function formatElapsed(elapsedMs: number): string {
  const total = Math.round(elapsedMs / 1000);
  const minutes = Math.floor(total / 60);
  const seconds = total % 60;
  return `${minutes}:${String(seconds).padStart(2, "0")}`;
}
