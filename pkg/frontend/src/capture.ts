/**
 * Webcam landmark capture. Pose/hand estimation runs entirely in the
 * browser (models load from the MediaPipe CDN at runtime); only
 * landmark coordinates ever leave the machine.
 *
 * The preview is shown selfie-style, so captured coordinates are
 * flipped to match it (x -> 1-x) and frames are tagged mirrored=true;
 * the server unmirrors them into its canonical frame. Frames whose
 * mean landmark visibility falls below the confidence threshold are
 * suppressed rather than sent.
 */

import {
  buildBodyFrame,
  buildHandFrame,
  frameConfidence,
  type RawPoint,
} from "./protocol.js";
import type { CaptureStats, Mode } from "./state.js";

const TASKS_VISION_URL =
  "https://cdn.jsdelivr.net/npm/@mediapipe/tasks-vision@0.10.14";
const WASM_URL = `${TASKS_VISION_URL}/wasm`;
const POSE_MODEL_URL =
  "https://storage.googleapis.com/mediapipe-models/pose_landmarker/pose_landmarker_lite/float16/latest/pose_landmarker_lite.task";
const HAND_MODEL_URL =
  "https://storage.googleapis.com/mediapipe-models/hand_landmarker/hand_landmarker/float16/latest/hand_landmarker.task";

export interface CaptureOptions {
  mode: Mode;
  confidenceThreshold: number;
  onFrame: (message: object) => void;
  onStats: (stats: CaptureStats) => void;
  onPermissionDenied: () => void;
}

interface MediapipePoint {
  x: number;
  y: number;
  z?: number;
  visibility?: number;
}

export function mirrorPoints(points: MediapipePoint[]): RawPoint[] {
  return points.map((p) => ({
    x: 1 - p.x,
    y: p.y,
    z: p.z,
    visibility: p.visibility,
  }));
}

export class LandmarkCapture {
  private running = false;
  private stream: MediaStream | null = null;
  private landmarker: { detectForVideo(v: HTMLVideoElement, t: number): unknown } | null = null;
  private sessionStart = 0;
  private lastFrameWall = 0;
  private fps = 0;

  constructor(private readonly options: CaptureOptions) {}

  async start(video: HTMLVideoElement): Promise<void> {
    try {
      this.stream = await navigator.mediaDevices.getUserMedia({
        video: { width: 640, height: 480, frameRate: { ideal: 30, min: 15 } },
      });
    } catch {
      this.options.onPermissionDenied();
      return;
    }
    video.srcObject = this.stream;
    await video.play();

    const visionUrl = `${TASKS_VISION_URL}/vision_bundle.mjs`;
    const vision: any = await import(/* @vite-ignore */ visionUrl);
    const fileset = await vision.FilesetResolver.forVisionTasks(WASM_URL);
    if (this.options.mode === "body") {
      this.landmarker = await vision.PoseLandmarker.createFromOptions(fileset, {
        baseOptions: { modelAssetPath: POSE_MODEL_URL },
        runningMode: "VIDEO",
        numPoses: 1,
      });
    } else {
      this.landmarker = await vision.HandLandmarker.createFromOptions(fileset, {
        baseOptions: { modelAssetPath: HAND_MODEL_URL },
        runningMode: "VIDEO",
        numHands: 1,
      });
    }

    this.running = true;
    this.sessionStart = performance.now();
    this.lastFrameWall = this.sessionStart;
    const loop = () => {
      if (!this.running) return;
      this.step(video);
      requestAnimationFrame(loop);
    };
    requestAnimationFrame(loop);
  }

  private step(video: HTMLVideoElement): void {
    if (!this.landmarker || video.readyState < 2) return;
    const now = performance.now();
    const result: any = this.landmarker.detectForVideo(video, now);
    const dt = now - this.lastFrameWall;
    this.lastFrameWall = now;
    this.fps = this.fps === 0 ? 1000 / dt : this.fps * 0.9 + (1000 / dt) * 0.1;

    const tMs = Math.round(now - this.sessionStart);
    if (this.options.mode === "body") {
      const pose: MediapipePoint[] | undefined = result?.landmarks?.[0];
      this.emit(pose, (points) => buildBodyFrame(points, tMs, true));
    } else {
      const hand: MediapipePoint[] | undefined = result?.landmarks?.[0];
      const label: string =
        result?.handednesses?.[0]?.[0]?.categoryName?.toLowerCase() ?? "right";
      const handedness = label === "left" ? "left" : "right";
      this.emit(hand, (points) => buildHandFrame(points, tMs, true, handedness));
    }
  }

  private emit(
    points: MediapipePoint[] | undefined,
    build: (points: RawPoint[]) => object,
  ): void {
    if (!points || points.length === 0) {
      this.options.onStats({ fps: this.fps, confidence: 0, suppressed: true });
      return;
    }
    const flipped = mirrorPoints(points);
    const confidence = frameConfidence(flipped);
    const suppressed = confidence < this.options.confidenceThreshold;
    this.options.onStats({ fps: this.fps, confidence, suppressed });
    if (!suppressed) {
      this.options.onFrame(build(flipped));
    }
  }

  stop(): void {
    this.running = false;
    this.stream?.getTracks().forEach((track) => track.stop());
    this.stream = null;
    this.landmarker = null;
  }
}
