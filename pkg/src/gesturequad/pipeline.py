"""Debounced gesture-to-command dispatch.

A gesture must stay stable for a configurable number of consecutive
frames before its command dispatches; while the robot executes, and for
a cooldown after it stops, all gestures are dropped. The clock is
injected through event timestamps, so replaying a stream reproduces the
same decisions exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .errors import IllegalTransition
from .gestures import Gesture, RobotCommand, map_gesture_to_command


class Phase(Enum):
    IDLE = "idle"
    EXECUTING = "executing"
    COOLDOWN = "cooldown"


@dataclass(frozen=True)
class PipelineParams:
    stable_frames: int = 5      # consecutive identical frames before dispatch
    cooldown_ms: int = 2000     # quiet period after the robot stops moving

    def __post_init__(self):
        if self.stable_frames < 1:
            raise ValueError("stable_frames must be >= 1")
        if self.cooldown_ms < 0:
            raise ValueError("cooldown_ms must be >= 0")


@dataclass(frozen=True)
class PipelineState:
    mode: str  # "body" | "hand", fixed per session
    phase: Phase = Phase.IDLE
    stable_gesture: Gesture | None = None
    stable_count: int = 0
    cooldown_deadline_ms: int | None = None

    def __post_init__(self):
        if self.mode not in ("body", "hand"):
            raise ValueError(f"mode must be 'body' or 'hand', got {self.mode!r}")

    def cooldown_remaining_ms(self, now_ms: int) -> int:
        if self.phase is not Phase.COOLDOWN or self.cooldown_deadline_ms is None:
            return 0
        return max(0, self.cooldown_deadline_ms - now_ms)


@dataclass(frozen=True)
class CommandEvent:
    timestamp_ms: int
    command: RobotCommand
    source_gesture: Gesture


def step(state: PipelineState, gesture: Gesture, now_ms: int,
         params: PipelineParams) -> tuple[PipelineState, CommandEvent | None]:
    """Feed one classified frame; maybe dispatch a command.

    Gestures of the wrong kind for the session mode are treated as
    Neutral, so they can never dispatch and they break any running
    stability streak.
    """
    if gesture.kind != state.mode:
        gesture = None
    if state.phase is Phase.COOLDOWN:
        if state.cooldown_deadline_ms is not None and now_ms >= state.cooldown_deadline_ms:
            state = replace(state, phase=Phase.IDLE, stable_gesture=None,
                            stable_count=0, cooldown_deadline_ms=None)
        else:
            return state, None
    if state.phase is Phase.EXECUTING:
        return state, None

    if gesture is None or gesture.is_neutral:
        return replace(state, stable_gesture=None, stable_count=0), None

    if state.stable_gesture == gesture:
        count = state.stable_count + 1
    else:
        count = 1
    if count >= params.stable_frames:
        command = map_gesture_to_command(gesture)
        event = CommandEvent(timestamp_ms=now_ms, command=command, source_gesture=gesture)
        new_state = replace(state, phase=Phase.EXECUTING, stable_gesture=None, stable_count=0)
        return new_state, event
    return replace(state, stable_gesture=gesture, stable_count=count), None


def motion_complete(state: PipelineState, now_ms: int, params: PipelineParams) -> PipelineState:
    """Robot stopped moving: enter the post-motion cooldown."""
    if state.phase is not Phase.EXECUTING:
        raise IllegalTransition(f"motion_complete in phase {state.phase.value}")
    return replace(state, phase=Phase.COOLDOWN,
                   cooldown_deadline_ms=now_ms + params.cooldown_ms)


def effective_phase(state: PipelineState, now_ms: int) -> Phase:
    """Phase as an observer should see it: an expired cooldown reads as idle."""
    if (state.phase is Phase.COOLDOWN and state.cooldown_deadline_ms is not None
            and now_ms >= state.cooldown_deadline_ms):
        return Phase.IDLE
    return state.phase
