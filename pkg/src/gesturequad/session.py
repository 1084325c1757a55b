"""Session records: wire-format codecs, durable recording, and reading.

A session file is JSON-lines: the header object first, then one
timestamped event per line. The frame message shapes double as the wire
protocol, so a recorded producer stream can be replayed byte-for-byte.
Field names are part of the protocol; the codec always emits keys in
the same order so encoding is canonical (encode(decode(line)) == line
for lines this codec produced).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .errors import CorruptRecord, OrderViolation, ProtocolViolation
from .gestures import Gesture, RobotCommand
from .landmarks import (BODY_LANDMARK_COUNT, HAND_LANDMARK_COUNT, BodyFrame,
                        HandFrame, Landmark)
from .pipeline import CommandEvent
from .sim import CourseStatus, RobotState


@dataclass(frozen=True)
class SessionHeader:
    session_id: str
    mode: str
    config_hash: str
    created_at: str


def _landmark_to_dict(lm: Landmark) -> dict:
    return {"x": lm.x, "y": lm.y, "z": lm.z, "v": lm.visibility}


def _landmark_from_dict(raw) -> Landmark:
    try:
        z = raw.get("z")
        return Landmark(x=float(raw["x"]), y=float(raw["y"]),
                        z=None if z is None else float(z),
                        visibility=float(raw.get("v", 1.0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad landmark {raw!r}: {exc}") from exc


def encode_event(event) -> str:
    """Canonical single-line JSON for any session event object."""
    if isinstance(event, SessionHeader):
        obj = {"type": "header", "session_id": event.session_id, "mode": event.mode,
               "config_hash": event.config_hash, "created_at": event.created_at}
    elif isinstance(event, BodyFrame):
        obj = {"type": "body_frame", "t_ms": event.timestamp_ms, "mirrored": event.mirrored,
               "landmarks": [_landmark_to_dict(lm) for lm in event.landmarks]}
    elif isinstance(event, HandFrame):
        obj = {"type": "hand_frame", "t_ms": event.timestamp_ms, "mirrored": event.mirrored,
               "handedness": event.handedness,
               "landmarks": [_landmark_to_dict(lm) for lm in event.landmarks]}
    elif isinstance(event, GestureEvent):
        obj = {"type": "gesture", "t_ms": event.t_ms, "kind": event.gesture.kind,
               "name": event.gesture.name}
    elif isinstance(event, CommandEvent):
        obj = {"type": "command", "action": event.command.value, "t_ms": event.timestamp_ms,
               "gesture": event.source_gesture.name}
    elif isinstance(event, RobotStateEvent):
        s = event.state
        obj = {"type": "robot_state", "t_ms": event.t_ms, "x": s.x, "y": s.y,
               "heading": s.heading, "posture": s.posture,
               "moving": s.motion is not None}
    elif isinstance(event, CourseEvent):
        c = event.status
        obj = {"type": "course_status", "t_ms": event.t_ms, "next": c.next_waypoint_index,
               "elapsed_ms": c.elapsed_ms, "completed": c.completed}
    else:
        raise TypeError(f"cannot encode {type(event).__name__}")
    return json.dumps(obj, separators=(",", ":"), allow_nan=False)


@dataclass(frozen=True)
class GestureEvent:
    t_ms: int
    gesture: Gesture


@dataclass(frozen=True)
class RobotStateEvent:
    t_ms: int
    state: RobotState


@dataclass(frozen=True)
class CourseEvent:
    t_ms: int
    status: CourseStatus


def decode_event(line: str):
    """Parse one session line back into its event object.

    Raises ValueError with a reason; callers map it to CorruptRecord
    (files) or ProtocolViolation (wire).
    """
    obj = json.loads(line)
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValueError("record is not an object with a type")
    kind = obj["type"]
    if kind == "header":
        return SessionHeader(session_id=str(obj["session_id"]), mode=str(obj["mode"]),
                             config_hash=str(obj["config_hash"]),
                             created_at=str(obj["created_at"]))
    if kind == "body_frame":
        landmarks = obj["landmarks"]
        if len(landmarks) != BODY_LANDMARK_COUNT:
            raise ValueError(f"body_frame needs {BODY_LANDMARK_COUNT} landmarks, got {len(landmarks)}")
        return BodyFrame(timestamp_ms=int(obj["t_ms"]),
                         landmarks=tuple(_landmark_from_dict(lm) for lm in landmarks),
                         mirrored=bool(obj["mirrored"]))
    if kind == "hand_frame":
        landmarks = obj["landmarks"]
        if len(landmarks) != HAND_LANDMARK_COUNT:
            raise ValueError(f"hand_frame needs {HAND_LANDMARK_COUNT} landmarks, got {len(landmarks)}")
        return HandFrame(timestamp_ms=int(obj["t_ms"]),
                         landmarks=tuple(_landmark_from_dict(lm) for lm in landmarks),
                         handedness=str(obj["handedness"]), mirrored=bool(obj["mirrored"]))
    if kind == "gesture":
        return GestureEvent(t_ms=int(obj["t_ms"]),
                            gesture=Gesture(kind=str(obj["kind"]), name=str(obj["name"])))
    if kind == "command":
        return CommandEvent(timestamp_ms=int(obj["t_ms"]),
                            command=RobotCommand.from_name(obj["action"]),
                            source_gesture=_gesture_for_command_name(obj))
    if kind == "robot_state":
        state = RobotState(x=float(obj["x"]), y=float(obj["y"]),
                           heading=float(obj["heading"]), posture=str(obj["posture"]))
        return RobotStateEvent(t_ms=int(obj["t_ms"]), state=state)
    if kind == "course_status":
        status = CourseStatus(next_waypoint_index=int(obj["next"]),
                              completed=bool(obj["completed"]),
                              elapsed_ms=int(obj["elapsed_ms"]))
        return CourseEvent(t_ms=int(obj["t_ms"]), status=status)
    raise ValueError(f"unknown record type {kind!r}")


def _gesture_for_command_name(obj) -> Gesture:
    name = str(obj["gesture"])
    for kind in ("body", "hand"):
        try:
            return Gesture(kind, name)
        except ValueError:
            continue
    raise ValueError(f"unknown gesture {name!r}")


def event_timestamp(event) -> int:
    if isinstance(event, (BodyFrame, HandFrame)):
        return event.timestamp_ms
    if isinstance(event, CommandEvent):
        return event.timestamp_ms
    return event.t_ms


class SessionWriter:
    """Append-only JSONL recorder; rejects out-of-order timestamps."""

    def __init__(self, path, header: SessionHeader):
        self._fh = open(path, "w")
        self._last_ms = None
        self._fh.write(encode_event(header) + "\n")

    def record(self, event):
        t = event_timestamp(event)
        if self._last_ms is not None and t < self._last_ms:
            raise OrderViolation(f"event at {t} ms after one at {self._last_ms} ms")
        self._last_ms = t
        self._fh.write(encode_event(event) + "\n")

    def close(self):
        if not self._fh.closed:
            self._fh.flush()
            os.fsync(self._fh.fileno())
            self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def read_session(path) -> tuple[SessionHeader, list]:
    """Whole-file read; raises CorruptRecord with the failing line number."""
    events = []
    header = None
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                raise CorruptRecord(line_no, "blank line")
            try:
                event = decode_event(line)
            except (ValueError, KeyError, TypeError) as exc:
                raise CorruptRecord(line_no, str(exc)) from None
            if line_no == 1:
                if not isinstance(event, SessionHeader):
                    raise CorruptRecord(1, "first record must be the header")
                header = event
            else:
                if isinstance(event, SessionHeader):
                    raise CorruptRecord(line_no, "duplicate header")
                events.append(event)
    if header is None:
        raise CorruptRecord(1, "empty file")
    return header, events


def decode_wire_message(data: str):
    """Decode a producer wire message; only frame types are accepted."""
    try:
        event = decode_event(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise ProtocolViolation("bad_message", str(exc)) from None
    if not isinstance(event, (BodyFrame, HandFrame)):
        raise ProtocolViolation("unexpected_type", "producers may only send frames")
    return event


def validate_session(path, stable_frames: int) -> None:
    """Offline invariant check: ordering plus the dispatch-stability rule.

    Every command must be preceded by at least `stable_frames`
    consecutive gesture records matching its source gesture.
    """
    _, events = read_session(path)
    last_t = None
    streak_gesture = None
    streak = 0
    for event in events:
        t = event_timestamp(event)
        if last_t is not None and t < last_t:
            raise OrderViolation(f"event at {t} ms after one at {last_t} ms")
        last_t = t
        if isinstance(event, GestureEvent):
            if event.gesture == streak_gesture:
                streak += 1
            else:
                streak_gesture, streak = event.gesture, 1
        elif isinstance(event, CommandEvent):
            if streak_gesture != event.source_gesture or streak < stable_frames:
                raise CorruptRecord(0, f"command {event.command.value} at {t} ms lacks "
                                       f"{stable_frames} stable gesture records")
