/**
 * Top-down arena rendering. The geometry helpers are pure so tests can
 * check the world-to-screen mapping and the robot footprint without a
 * canvas; draw() needs a 2D context.
 */

import type { ConsoleState } from "./state.js";
import { cooldownFraction, formatElapsed } from "./state.js";

/** Robot footprint in meters (length along heading, width across). */
export const ROBOT_LENGTH = 0.588;
export const ROBOT_WIDTH = 0.22;

export interface Arena {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export interface CourseGeometry {
  waypoints: Array<[number, number]>;
  captureRadius: number;
  arena: Arena;
}

/** The bundled default zigzag course; override via ?course=<url>. */
export const DEFAULT_COURSE: CourseGeometry = {
  waypoints: [
    [1.5, 1.0],
    [3.0, -1.0],
    [4.5, 1.0],
    [6.0, -1.0],
  ],
  captureRadius: 0.3,
  arena: { xMin: -1.0, xMax: 8.0, yMin: -3.0, yMax: 3.0 },
};

export interface Viewport {
  scale: number; // px per meter
  offsetX: number;
  offsetY: number;
  height: number;
}

/** Uniform-scale fit of the arena into the canvas, with a margin. */
export function makeViewport(
  arena: Arena,
  canvasWidth: number,
  canvasHeight: number,
  marginPx = 20,
): Viewport {
  const worldW = arena.xMax - arena.xMin;
  const worldH = arena.yMax - arena.yMin;
  const scale = Math.min(
    (canvasWidth - 2 * marginPx) / worldW,
    (canvasHeight - 2 * marginPx) / worldH,
  );
  const offsetX = marginPx + (canvasWidth - 2 * marginPx - worldW * scale) / 2 - arena.xMin * scale;
  const offsetY = marginPx + (canvasHeight - 2 * marginPx - worldH * scale) / 2 + arena.yMax * scale;
  return { scale, offsetX, offsetY, height: canvasHeight };
}

/** World meters (y up) to canvas pixels (y down). */
export function worldToScreen(vp: Viewport, x: number, y: number): [number, number] {
  return [vp.offsetX + x * vp.scale, vp.offsetY - y * vp.scale];
}

/** Footprint corners in world coordinates, counterclockwise. */
export function robotCorners(
  x: number,
  y: number,
  headingDeg: number,
): Array<[number, number]> {
  const rad = (headingDeg * Math.PI) / 180;
  const c = Math.cos(rad);
  const s = Math.sin(rad);
  const hl = ROBOT_LENGTH / 2;
  const hw = ROBOT_WIDTH / 2;
  const local: Array<[number, number]> = [
    [hl, hw],
    [-hl, hw],
    [-hl, -hw],
    [hl, -hw],
  ];
  return local.map(([lx, ly]) => [x + lx * c - ly * s, y + lx * s + ly * c]);
}

const COLORS = {
  arena: "#1c2128",
  grid: "#2d333b",
  robotStanding: "#58a6ff",
  robotLying: "#8b949e",
  heading: "#f0f6fc",
  waypoint: "#3fb950",
  waypointNext: "#d29922",
  waypointDone: "#30363d",
  trail: "#388bfd66",
  text: "#e6edf3",
};

export function draw(
  ctx: CanvasRenderingContext2D,
  state: ConsoleState,
  course: CourseGeometry,
  cooldownTotalMs: number,
): void {
  const canvas = ctx.canvas;
  const vp = makeViewport(course.arena, canvas.width, canvas.height);
  ctx.fillStyle = COLORS.arena;
  ctx.fillRect(0, 0, canvas.width, canvas.height);

  drawGrid(ctx, vp, course.arena);
  drawWaypoints(ctx, vp, state, course);
  drawTrail(ctx, vp, state.trail);
  if (state.snapshot) {
    drawRobot(ctx, vp, state.snapshot.robot);
  }
  drawHud(ctx, state, cooldownTotalMs);
}

function drawGrid(ctx: CanvasRenderingContext2D, vp: Viewport, arena: Arena): void {
  ctx.strokeStyle = COLORS.grid;
  ctx.lineWidth = 1;
  for (let gx = Math.ceil(arena.xMin); gx <= arena.xMax; gx += 1) {
    const [sx0, sy0] = worldToScreen(vp, gx, arena.yMin);
    const [sx1, sy1] = worldToScreen(vp, gx, arena.yMax);
    line(ctx, sx0, sy0, sx1, sy1);
  }
  for (let gy = Math.ceil(arena.yMin); gy <= arena.yMax; gy += 1) {
    const [sx0, sy0] = worldToScreen(vp, arena.xMin, gy);
    const [sx1, sy1] = worldToScreen(vp, arena.xMax, gy);
    line(ctx, sx0, sy0, sx1, sy1);
  }
}

function drawWaypoints(
  ctx: CanvasRenderingContext2D,
  vp: Viewport,
  state: ConsoleState,
  course: CourseGeometry,
): void {
  const next = state.snapshot?.course.next ?? 0;
  course.waypoints.forEach(([wx, wy], i) => {
    const [sx, sy] = worldToScreen(vp, wx, wy);
    const r = course.captureRadius * vp.scale;
    ctx.beginPath();
    ctx.arc(sx, sy, r, 0, 2 * Math.PI);
    ctx.strokeStyle =
      i < next ? COLORS.waypointDone : i === next ? COLORS.waypointNext : COLORS.waypoint;
    ctx.lineWidth = i === next ? 3 : 1.5;
    ctx.stroke();
    ctx.fillStyle = COLORS.text;
    ctx.font = "12px system-ui, sans-serif";
    ctx.fillText(String(i + 1), sx - 4, sy + 4);
  });
}

function drawTrail(
  ctx: CanvasRenderingContext2D,
  vp: Viewport,
  trail: Array<[number, number]>,
): void {
  if (trail.length < 2) return;
  ctx.strokeStyle = COLORS.trail;
  ctx.lineWidth = 2;
  ctx.beginPath();
  trail.forEach(([x, y], i) => {
    const [sx, sy] = worldToScreen(vp, x, y);
    if (i === 0) ctx.moveTo(sx, sy);
    else ctx.lineTo(sx, sy);
  });
  ctx.stroke();
}

function drawRobot(
  ctx: CanvasRenderingContext2D,
  vp: Viewport,
  robot: { x: number; y: number; heading: number; posture: string },
): void {
  const corners = robotCorners(robot.x, robot.y, robot.heading).map(([x, y]) =>
    worldToScreen(vp, x, y),
  );
  ctx.beginPath();
  corners.forEach(([sx, sy], i) => {
    if (i === 0) ctx.moveTo(sx, sy);
    else ctx.lineTo(sx, sy);
  });
  ctx.closePath();
  ctx.fillStyle = robot.posture === "standing" ? COLORS.robotStanding : COLORS.robotLying;
  ctx.fill();

  // heading arrow from center to the nose
  const rad = (robot.heading * Math.PI) / 180;
  const [cx, cy] = worldToScreen(vp, robot.x, robot.y);
  const [nx, ny] = worldToScreen(
    vp,
    robot.x + Math.cos(rad) * ROBOT_LENGTH * 0.75,
    robot.y + Math.sin(rad) * ROBOT_LENGTH * 0.75,
  );
  ctx.strokeStyle = COLORS.heading;
  ctx.lineWidth = 2;
  line(ctx, cx, cy, nx, ny);
}

function drawHud(
  ctx: CanvasRenderingContext2D,
  state: ConsoleState,
  cooldownTotalMs: number,
): void {
  const snap = state.snapshot;
  ctx.fillStyle = COLORS.text;
  ctx.font = "14px system-ui, sans-serif";
  const gesture = snap?.gesture ?? "-";
  const phase = snap?.phase ?? "-";
  const elapsed = snap ? formatElapsed(snap.course.elapsed_ms) : "0:00";
  const done = snap?.course.completed ? " (done)" : "";
  ctx.fillText(`gesture: ${gesture}`, 10, 20);
  ctx.fillText(`phase: ${phase}`, 10, 40);
  ctx.fillText(`course: ${elapsed}${done}`, 10, 60);
  ctx.fillText(
    `capture: ${state.capture.fps.toFixed(0)} fps, conf ${state.capture.confidence.toFixed(2)}` +
      (state.capture.suppressed ? " (suppressed)" : ""),
    10,
    80,
  );

  // cooldown ring, top-right
  const fraction = cooldownFraction(snap, cooldownTotalMs);
  if (fraction > 0) {
    const cx = ctx.canvas.width - 36;
    const cy = 36;
    ctx.beginPath();
    ctx.arc(cx, cy, 20, -Math.PI / 2, -Math.PI / 2 + fraction * 2 * Math.PI);
    ctx.strokeStyle = COLORS.waypointNext;
    ctx.lineWidth = 5;
    ctx.stroke();
    ctx.fillText(((snap?.cooldown_ms ?? 0) / 1000).toFixed(1), cx - 12, cy + 5);
  }

  if (state.banner) {
    ctx.fillStyle = "#f8514966";
    ctx.fillRect(0, ctx.canvas.height - 32, ctx.canvas.width, 32);
    ctx.fillStyle = COLORS.text;
    ctx.fillText(state.banner, 10, ctx.canvas.height - 11);
  }
}

function line(ctx: CanvasRenderingContext2D, x0: number, y0: number, x1: number, y1: number) {
  ctx.beginPath();
  ctx.moveTo(x0, y0);
  ctx.lineTo(x1, y1);
  ctx.stroke();
}
