/** Console entry point: wires capture, sockets, state, and rendering. */

import { LandmarkCapture } from "./capture.js";
import { DEFAULT_COURSE, draw, type CourseGeometry } from "./render.js";
import { ServerLink, defaultServerUrl } from "./socket.js";
import {
  courseInProgress,
  initialState,
  reduce,
  shouldSendFrame,
  type ConsoleEvent,
  type ConsoleState,
  type Mode,
} from "./state.js";

const CONFIDENCE_THRESHOLD = 0.5;
const COOLDOWN_TOTAL_MS = 2000;

async function loadCourse(): Promise<CourseGeometry> {
  const params = new URLSearchParams(window.location.search);
  const url = params.get("course");
  if (!url) return DEFAULT_COURSE;
  try {
    const response = await fetch(url);
    return (await response.json()) as CourseGeometry;
  } catch {
    return DEFAULT_COURSE;
  }
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

async function main(): Promise<void> {
  const canvas = el<HTMLCanvasElement>("arena");
  const video = el<HTMLVideoElement>("preview");
  const modeButton = el<HTMLButtonElement>("mode-toggle");
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("canvas 2d context unavailable");

  const params = new URLSearchParams(window.location.search);
  const initialMode = (params.get("mode") === "hand" ? "hand" : "body") as Mode;
  let state: ConsoleState = initialState(initialMode);
  const course = await loadCourse();

  const dispatch = (event: ConsoleEvent) => {
    state = reduce(state, event);
    modeButton.textContent = `mode: ${state.mode}`;
    modeButton.disabled = courseInProgress(state);
  };

  const link = new ServerLink(defaultServerUrl(), {
    onStatus: (status) => dispatch({ kind: "connection", status }),
    onTelemetry: (message) => dispatch({ kind: "telemetry", message }),
  });
  link.connect();

  let capture = new LandmarkCapture({
    mode: state.mode,
    confidenceThreshold: CONFIDENCE_THRESHOLD,
    onFrame: (message) => {
      if (shouldSendFrame(state, state.capture.confidence, CONFIDENCE_THRESHOLD)) {
        link.sendFrame(message);
      }
    },
    onStats: (stats) => dispatch({ kind: "capture", stats }),
    onPermissionDenied: () => dispatch({ kind: "permission-denied" }),
  });
  void capture.start(video);

  modeButton.addEventListener("click", () => {
    const before = state.mode;
    dispatch({ kind: "toggle-mode" });
    if (state.mode !== before) {
      capture.stop();
      capture = new LandmarkCapture({
        mode: state.mode,
        confidenceThreshold: CONFIDENCE_THRESHOLD,
        onFrame: (message) => {
          if (shouldSendFrame(state, state.capture.confidence, CONFIDENCE_THRESHOLD)) {
            link.sendFrame(message);
          }
        },
        onStats: (stats) => dispatch({ kind: "capture", stats }),
        onPermissionDenied: () => dispatch({ kind: "permission-denied" }),
      });
      void capture.start(video);
    }
  });

  const frame = () => {
    draw(ctx, state, course, COOLDOWN_TOTAL_MS);
    requestAnimationFrame(frame);
  };
  requestAnimationFrame(frame);
}

window.addEventListener("load", () => {
  void main();
});
