/**
 * Wire protocol shared with the gesturequad server.
 *
 * Message field names are normative; the zod schemas below mirror the
 * server's codec and double as the conformance check in tests: every
 * message this console emits must parse against its own schema.
 */

import { z } from "zod";

export const BODY_LANDMARK_COUNT = 33;
export const HAND_LANDMARK_COUNT = 21;

export const landmarkSchema = z.object({
  x: z.number().finite(),
  y: z.number().finite(),
  z: z.number().nullable(),
  v: z.number().min(0).max(1),
});

export const bodyFrameSchema = z.object({
  type: z.literal("body_frame"),
  t_ms: z.number().int().nonnegative(),
  mirrored: z.boolean(),
  landmarks: z.array(landmarkSchema).length(BODY_LANDMARK_COUNT),
});

export const handFrameSchema = z.object({
  type: z.literal("hand_frame"),
  t_ms: z.number().int().nonnegative(),
  mirrored: z.boolean(),
  handedness: z.enum(["left", "right"]),
  landmarks: z.array(landmarkSchema).length(HAND_LANDMARK_COUNT),
});

export const stateSchema = z.object({
  type: z.literal("state"),
  robot: z.object({
    x: z.number(),
    y: z.number(),
    heading: z.number(),
    posture: z.enum(["standing", "lying"]),
  }),
  gesture: z.string(),
  phase: z.enum(["idle", "executing", "cooldown"]),
  cooldown_ms: z.number().int().nonnegative(),
  course: z.object({
    next: z.number().int().nonnegative(),
    elapsed_ms: z.number().int().nonnegative(),
    completed: z.boolean(),
  }),
});

export const commandSchema = z.object({
  type: z.literal("command"),
  action: z.string(),
  t_ms: z.number().int().nonnegative(),
  gesture: z.string(),
});

export const telemetrySchema = z.discriminatedUnion("type", [stateSchema, commandSchema]);

export type Landmark = z.infer<typeof landmarkSchema>;
export type BodyFrameMessage = z.infer<typeof bodyFrameSchema>;
export type HandFrameMessage = z.infer<typeof handFrameSchema>;
export type StateMessage = z.infer<typeof stateSchema>;
export type CommandMessage = z.infer<typeof commandSchema>;
export type TelemetryMessage = z.infer<typeof telemetrySchema>;

export interface RawPoint {
  x: number;
  y: number;
  z?: number;
  visibility?: number;
}

function toLandmark(p: RawPoint): Landmark {
  return {
    x: p.x,
    y: p.y,
    z: p.z ?? null,
    v: clamp01(p.visibility ?? 1),
  };
}

function clamp01(v: number): number {
  return Math.min(1, Math.max(0, v));
}

export function buildBodyFrame(
  points: RawPoint[],
  tMs: number,
  mirrored: boolean,
): BodyFrameMessage {
  if (points.length !== BODY_LANDMARK_COUNT) {
    throw new Error(`body frame needs ${BODY_LANDMARK_COUNT} landmarks, got ${points.length}`);
  }
  return {
    type: "body_frame",
    t_ms: Math.round(tMs),
    mirrored,
    landmarks: points.map(toLandmark),
  };
}

export function buildHandFrame(
  points: RawPoint[],
  tMs: number,
  mirrored: boolean,
  handedness: "left" | "right",
): HandFrameMessage {
  if (points.length !== HAND_LANDMARK_COUNT) {
    throw new Error(`hand frame needs ${HAND_LANDMARK_COUNT} landmarks, got ${points.length}`);
  }
  return {
    type: "hand_frame",
    t_ms: Math.round(tMs),
    mirrored,
    handedness,
    landmarks: points.map(toLandmark),
  };
}

/** Mean visibility of a landmark set: the frame-level confidence gate. */
export function frameConfidence(points: RawPoint[]): number {
  if (points.length === 0) return 0;
  const sum = points.reduce((acc, p) => acc + (p.visibility ?? 1), 0);
  return sum / points.length;
}

export function parseTelemetry(raw: string): TelemetryMessage | null {
  let parsed: unknown;
  try {
    parsed = JSON.parse(raw);
  } catch {
    return null;
  }
  const result = telemetrySchema.safeParse(parsed);
  return result.success ? result.data : null;
}
