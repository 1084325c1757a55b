"""Deterministic session engine: one logical event loop.

All state mutation happens either when a frame arrives (classification
and pipeline stepping at the frame's timestamp) or on ticks of a fixed
dt grid anchored at t=0 (motion interpolation, completion detection,
waypoint capture). Because both are pure functions of the frame stream
and dt, a recorded stream replays to the identical event sequence; the
live server merely feeds wall time into advance_to().
"""

from __future__ import annotations

import dataclasses
from collections import Counter

from .angles import compute_angles
from .body import classify_body
from .config import GestureConfig
from .errors import InvalidPosture
from .gestures import BODY_NEUTRAL, HAND_NEUTRAL, Gesture
from .hand import classify_hand
from .landmarks import BodyFrame, HandFrame, unmirror
from .pipeline import (CommandEvent, PipelineState, effective_phase,
                       motion_complete, step)
from .session import (CourseEvent, GestureEvent, RobotStateEvent,
                      SessionHeader, SessionWriter, event_timestamp,
                      read_session)
from .sim import Course, CourseTracker, start_motion, tick

DEFAULT_DT_MS = 16


class SessionEngine:
    def __init__(self, mode: str, config: GestureConfig, course: Course,
                 dt_ms: int = DEFAULT_DT_MS, writer: SessionWriter | None = None,
                 log=None):
        if mode not in ("body", "hand"):
            raise ValueError(f"mode must be 'body' or 'hand', got {mode!r}")
        if dt_ms < 1:
            raise ValueError("dt_ms must be >= 1")
        self.mode = mode
        self.config = config
        self.course = course
        self.dt_ms = dt_ms
        self.writer = writer
        self.log = log or (lambda msg: None)

        self.grid_ms = 0
        self.last_frame_ms = -1
        self.robot = course.start
        self._motion_started_ms: int | None = None
        self.pipeline_state = PipelineState(mode=mode)
        self.tracker = CourseTracker(course)
        self.last_gesture: Gesture = BODY_NEUTRAL if mode == "body" else HAND_NEUTRAL
        self.command_counts: Counter = Counter()
        self.command_log: list[str] = []
        self.observers: list = []  # callables taking (event_obj)

    # -- clock ------------------------------------------------------------

    @property
    def now_ms(self) -> int:
        return max(self.grid_ms, self.last_frame_ms, 0)

    def advance_to(self, t_ms: int):
        """Process every dt-grid tick at or before t_ms."""
        while self.grid_ms + self.dt_ms <= t_ms:
            self.grid_ms += self.dt_ms
            self._tick(self.grid_ms)

    def _tick(self, t_ms: int):
        if self.robot.motion is None:
            return
        started = self._motion_started_ms
        elapsed_ms = self.dt_ms if started is None else t_ms - started
        self._motion_started_ms = None
        self.robot, completed = tick(self.robot, elapsed_ms / 1000.0)
        self._check_course(t_ms)
        if completed:
            self.pipeline_state = motion_complete(self.pipeline_state, t_ms,
                                                  self.config.pipeline)
            self._record(RobotStateEvent(t_ms=t_ms, state=self.robot))

    def _check_course(self, t_ms: int):
        before = self.tracker.next_index
        status = self.tracker.course_step(self.robot, t_ms)
        if self.tracker.next_index != before:
            self._record(CourseEvent(t_ms=t_ms, status=status))

    # -- frames -----------------------------------------------------------

    def handle_frame(self, frame) -> Gesture:
        """Ingest one landmark frame; returns the classified gesture."""
        t = max(frame.timestamp_ms, self.last_frame_ms + 1, self.grid_ms)
        if t != frame.timestamp_ms:
            frame = dataclasses.replace(frame, timestamp_ms=t)
        self.advance_to(t)
        self.last_frame_ms = t

        frame = unmirror(frame)
        self._record(frame)
        if self.mode == "body":
            gesture = (classify_body(compute_angles(frame, self.config.vis_threshold),
                                     self.config.body_poses)
                       if isinstance(frame, BodyFrame) else BODY_NEUTRAL)
        else:
            gesture = (classify_hand(frame, self.config.hand)
                       if isinstance(frame, HandFrame) else HAND_NEUTRAL)
        self.last_gesture = gesture
        self._record(GestureEvent(t_ms=t, gesture=gesture))

        self.pipeline_state, event = step(self.pipeline_state, gesture, t,
                                          self.config.pipeline)
        if event is not None:
            self._dispatch(event)
        return gesture

    def _dispatch(self, event: CommandEvent):
        self._record(event)
        self.command_counts[event.source_gesture.name] += 1
        self.command_log.append(f"{event.timestamp_ms} {event.command.value}")
        self.tracker.note_command(event.timestamp_ms)
        try:
            self.robot = start_motion(self.robot, event.command,
                                      self.config.motion, self.course.arena)
            self._motion_started_ms = event.timestamp_ms
        except InvalidPosture as exc:
            # Ignored command: no motion, so the cooldown starts right away.
            self.log(f"ignored {event.command.value}: {exc}")
            self.pipeline_state = motion_complete(self.pipeline_state,
                                                  event.timestamp_ms,
                                                  self.config.pipeline)
            return
        self._record(RobotStateEvent(t_ms=event.timestamp_ms, state=self.robot))
        self._check_course(event.timestamp_ms)

    # -- output -----------------------------------------------------------

    def _record(self, event):
        if self.writer is not None:
            self.writer.record(event)
        for observer in self.observers:
            observer(event)

    def snapshot(self) -> dict:
        """Observer-facing state message (wire format)."""
        now = self.now_ms
        status = self.tracker.status(now)
        return {
            "type": "state",
            "robot": {"x": self.robot.x, "y": self.robot.y,
                      "heading": self.robot.heading, "posture": self.robot.posture},
            "gesture": self.last_gesture.name,
            "phase": effective_phase(self.pipeline_state, now).value,
            "cooldown_ms": self.pipeline_state.cooldown_remaining_ms(now),
            "course": {"next": status.next_waypoint_index,
                       "elapsed_ms": status.elapsed_ms,
                       "completed": status.completed},
        }

    def summary(self) -> dict:
        status = self.tracker.status(self.now_ms)
        return {
            "mode": self.mode,
            "completed": status.completed,
            "elapsed_ms": status.elapsed_ms,
            "command_count": sum(self.command_counts.values()),
            "per_gesture": dict(sorted(self.command_counts.items())),
        }


def replay(path, config: GestureConfig, course: Course,
           dt_ms: int = DEFAULT_DT_MS, record_path=None, pacer=None,
           log=None) -> SessionEngine:
    """Re-run a recorded session through a fresh engine.

    Only frame events re-enter the pipeline; everything else is derived
    again. The logical clock follows recorded time up to the last
    recorded timestamp, so late motion/capture events settle exactly as
    they did originally. `pacer`, when given, is called with each frame
    timestamp before processing (the realtime mode sleeps there); the
    logical outcome is identical either way.
    """
    header, events = read_session(path)
    if header.config_hash != config.hash and log is not None:
        log(f"config hash mismatch: session {header.config_hash[:12]}, "
            f"current {config.hash[:12]}")
    writer = None
    if record_path is not None:
        writer = SessionWriter(record_path, SessionHeader(
            session_id=header.session_id, mode=header.mode,
            config_hash=config.hash, created_at=header.created_at))
    engine = SessionEngine(mode=header.mode, config=config, course=course,
                           dt_ms=dt_ms, writer=writer, log=log)
    try:
        horizon = 0
        for event in events:
            horizon = max(horizon, event_timestamp(event))
            if isinstance(event, (BodyFrame, HandFrame)):
                if pacer is not None:
                    pacer(event.timestamp_ms)
                engine.handle_frame(event)
        engine.advance_to(horizon)
    finally:
        if writer is not None:
            writer.close()
    return engine
