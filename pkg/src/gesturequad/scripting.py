"""Scripted landmark sessions: drive the pipeline from a command list.

Builds a synthetic producer stream (canonical skeleton frames on a
fixed frame grid) that dispatches a given command sequence. The
schedule leaves enough slack after each motion-plus-cooldown window
that dispatch times are identical for any engine tick size up to
MAX_SCHEDULED_DT_MS, which keeps scripted fixtures tick-size agnostic.
"""

from __future__ import annotations

import math

from .config import GestureConfig
from .gestures import RobotCommand, gesture_for_command
from .session import SessionHeader, SessionWriter
from .skeleton import body_pose_frame, hand_pose_frame

FRAME_PERIOD_MS = 33          # ~30 fps capture
MAX_SCHEDULED_DT_MS = 100     # largest engine tick the schedule tolerates
_SLACK_MS = 100


def scripted_frames(commands, config: GestureConfig, kind: str = "body"):
    """Frames realizing the command sequence, plus the dispatch times.

    Returns (frames, dispatch_ms) where dispatch_ms[i] is the timestamp
    at which command i leaves the pipeline (the K-th stable frame).
    """
    period = FRAME_PERIOD_MS
    k = config.pipeline.stable_frames
    cooldown = config.pipeline.cooldown_ms

    if kind == "body":
        def pose_frame(name, t):
            return body_pose_frame(name, timestamp_ms=t)
        neutral_pose = "rest"
    else:
        def pose_frame(name, t):
            return hand_pose_frame(name, timestamp_ms=t)
        neutral_pose = "Neutral"

    frames = []
    dispatch_ms = []
    slot = 0  # frame-grid index

    def grid_at_or_after(t_ms):
        return math.ceil(t_ms / period)

    for command in commands:
        gesture = gesture_for_command(command, kind)
        for i in range(k):
            t = (slot + i) * period
            frames.append(pose_frame(gesture.name, t))
        dispatch = (slot + k - 1) * period
        dispatch_ms.append(dispatch)

        duration_ms = round(config.motion.duration_for(command) * 1000)
        busy_until = dispatch + duration_ms + MAX_SCHEDULED_DT_MS + cooldown + _SLACK_MS
        next_slot = grid_at_or_after(busy_until)
        if neutral_pose is not None:
            for s in range(slot + k, next_slot):
                frames.append(pose_frame(neutral_pose, s * period))
        slot = next_slot

    # Trailing quiet frames so the recorded horizon covers the final
    # motion, its captures, and the cooldown.
    last = commands[-1]
    tail_until = dispatch_ms[-1] + round(config.motion.duration_for(last) * 1000) \
        + cooldown + 2 * MAX_SCHEDULED_DT_MS
    for s in range(slot, grid_at_or_after(tail_until) + 1):
        frames.append(pose_frame(neutral_pose, s * period))
    return frames, dispatch_ms


def write_scripted_session(path, commands, config: GestureConfig,
                           kind: str = "body", session_id: str = "scripted"):
    frames, dispatch_ms = scripted_frames(commands, config, kind)
    header = SessionHeader(session_id=session_id, mode=kind,
                           config_hash=config.hash, created_at="1970-01-01T00:00:00Z")
    with SessionWriter(path, header) as writer:
        for frame in frames:
            writer.record(frame)
    return dispatch_ms


# The command sequence that walks the default zigzag course. Derived by
# plane geometry from the default motion profile (0.5 m steps, 30-degree
# rotations); the acceptance suite re-checks it against an independent
# kinematics oracle.
ZIGZAG_COMMANDS = (
    (RobotCommand.ROTATE_CCW,)
    + (RobotCommand.GO_FORWARD,) * 4
    + (RobotCommand.ROTATE_CW,) * 3
    + (RobotCommand.GO_FORWARD,) * 5
    + (RobotCommand.ROTATE_CCW,) * 4
    + (RobotCommand.GO_FORWARD,) * 5
    + (RobotCommand.ROTATE_CW,) * 4
    + (RobotCommand.GO_FORWARD,) * 3
    + (RobotCommand.ROTATE_CCW,)
    + (RobotCommand.GO_FORWARD,) * 2
)
