"""Gesture vocabulary and the gesture-to-command mapping.

Nine body poses and nine hand poses each drive one of nine robot
actions; Neutral (either kind) drives nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class RobotCommand(Enum):
    GO_FORWARD = "GoForward"
    GO_BACKWARD = "GoBackward"
    ROTATE_CCW = "RotateCCW"
    ROTATE_CW = "RotateCW"
    STRAFE_LEFT = "StrafeLeft"
    STRAFE_RIGHT = "StrafeRight"
    LAY_DOWN = "LayDown"
    STAND_UP = "StandUp"
    TURN_AROUND = "TurnAround"

    @classmethod
    def from_name(cls, name: str) -> "RobotCommand":
        for cmd in cls:
            if cmd.value == name:
                return cmd
        raise ValueError(f"unknown robot command {name!r}")


BODY_GESTURES = (
    "HandsOnHips", "HandsOnHead", "LeftArmBent", "RightArmBent",
    "LeftArmOut", "RightArmOut", "TPose", "ArmsElevated", "BothArmsBent",
)

HAND_GESTURES = (
    "PointUp", "PalmOut", "PointLeft", "PointRight",
    "SidewaysLeft", "SidewaysRight", "FistLeft", "FistRight", "Fist",
)

NEUTRAL_NAME = "Neutral"


@dataclass(frozen=True)
class Gesture:
    kind: str  # "body" | "hand"
    name: str

    def __post_init__(self):
        if self.kind not in ("body", "hand"):
            raise ValueError(f"kind must be 'body' or 'hand', got {self.kind!r}")
        vocabulary = BODY_GESTURES if self.kind == "body" else HAND_GESTURES
        if self.name != NEUTRAL_NAME and self.name not in vocabulary:
            raise ValueError(f"{self.name!r} is not a {self.kind} gesture")

    @property
    def is_neutral(self) -> bool:
        return self.name == NEUTRAL_NAME


def body_gesture(name: str) -> Gesture:
    return Gesture("body", name)


def hand_gesture(name: str) -> Gesture:
    return Gesture("hand", name)


BODY_NEUTRAL = Gesture("body", NEUTRAL_NAME)
HAND_NEUTRAL = Gesture("hand", NEUTRAL_NAME)

# Action / hand gesture / body gesture rows, one per command.
_COMMAND_ROWS = (
    (RobotCommand.GO_FORWARD, "PointUp", "HandsOnHips"),
    (RobotCommand.GO_BACKWARD, "PalmOut", "HandsOnHead"),
    (RobotCommand.ROTATE_CCW, "PointLeft", "LeftArmBent"),
    (RobotCommand.ROTATE_CW, "PointRight", "RightArmBent"),
    (RobotCommand.STRAFE_LEFT, "SidewaysLeft", "LeftArmOut"),
    (RobotCommand.STRAFE_RIGHT, "SidewaysRight", "RightArmOut"),
    (RobotCommand.LAY_DOWN, "FistLeft", "TPose"),
    (RobotCommand.STAND_UP, "FistRight", "ArmsElevated"),
    (RobotCommand.TURN_AROUND, "Fist", "BothArmsBent"),
)

GESTURE_TO_COMMAND = {}
COMMAND_TO_GESTURE = {}
for _cmd, _hand, _body in _COMMAND_ROWS:
    GESTURE_TO_COMMAND[("hand", _hand)] = _cmd
    GESTURE_TO_COMMAND[("body", _body)] = _cmd
    COMMAND_TO_GESTURE[("hand", _cmd)] = Gesture("hand", _hand)
    COMMAND_TO_GESTURE[("body", _cmd)] = Gesture("body", _body)


def map_gesture_to_command(gesture: Gesture) -> RobotCommand | None:
    """Command for a non-Neutral gesture; None for Neutral."""
    if gesture.is_neutral:
        return None
    return GESTURE_TO_COMMAND[(gesture.kind, gesture.name)]


def gesture_for_command(command: RobotCommand, kind: str) -> Gesture:
    """Inverse mapping, useful for scripting sessions."""
    return COMMAND_TO_GESTURE[(kind, command)]
